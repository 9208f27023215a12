#pragma once

namespace decoyrate {

enum class SecurityFamily { Gllp, SmoothEntropy };

// Per-stage failure-probability split under a final-key target zeta.
// GLLP protocols budget the fidelity-derived total eps = 1 - sqrt(1 - zeta^2)
// across (EV, n_pe x PE, PA, phase sampling); smooth-entropy protocols budget
// zeta itself across (EV, n_pe x PE, PA, smoothing) with eps_pe < eps_bar.
struct SecurityBudget {
    double zeta_target = 0.0;
    SecurityFamily family = SecurityFamily::Gllp;
    int n_pe = 0;        // number of independently estimated parameters
    double eps_ev = 0.0; // error verification
    double eps_pe = 0.0; // per estimated parameter
    double eps_pa = 0.0; // privacy amplification
    double eps_ph = 0.0; // phase-error sampling (GLLP only, else 0)
    double eps_bar = 0.0; // smoothing (smooth-entropy only, else 0)
};

// zeta = sqrt(eps * (2 - eps)); strictly increasing, ~sqrt(2 eps) for small eps.
double zeta_from_gllp_failure(double eps);

// Exact inverse: eps = 1 - sqrt(1 - zeta^2) = zeta^2 / (1 + sqrt(1 - zeta^2)).
double gllp_failure_from_zeta(double zeta);

// EQUAL policy: uniform shares; the smooth-entropy smoothing share is doubled
// so that eps_pe < eps_bar holds strictly (zeta splits into n_pe + 4 shares).
SecurityBudget allocate_budget(double zeta, SecurityFamily family, int n_pe);

// EXPLICIT policy: validate caller shares against the family invariant.
// eps_tail is eps_ph (GLLP) or eps_bar (smooth-entropy).
// Throws std::invalid_argument when over budget or eps_pe >= eps_bar.
SecurityBudget allocate_budget(double zeta, SecurityFamily family, int n_pe,
                               double eps_ev, double eps_pe, double eps_pa,
                               double eps_tail);

// Toeplitz-hash error-verification cost: ceil(1 + log2(n_sift / eps_ev)) bits.
double ev_cost(double n_sift, double eps_ev);

// Leftover-hash privacy-amplification cost: ceil(1 + 2*log2(1/eps_pa)) bits.
double pa_cost(double eps_pa);

} // namespace decoyrate
