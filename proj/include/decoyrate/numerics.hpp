#pragma once

namespace decoyrate {

// Binary Shannon entropy in bits, with the convention 0*log2(0) = 0.
// Throws std::domain_error outside [0,1].
double binary_entropy(double p);

// Two-sided Gaussian tail P(|X| > u) for a standard normal X.
// Accurate in absolute terms down to ~1e-25 (scaled erfc underneath).
// Throws std::domain_error for u < 0.
double gaussian_tail(double u);

// Inverse of gaussian_tail: the u with gaussian_tail(u) = eps.
// Bracketed bisection on [0, 40], 1e-12 absolute convergence.
// Throws std::domain_error unless 0 < eps <= 1.
double gaussian_quantile(double eps);

} // namespace decoyrate
