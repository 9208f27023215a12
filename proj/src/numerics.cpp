#include "decoyrate/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace decoyrate {

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("binary_entropy: p must lie in [0,1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double gaussian_tail(double u) {
    if (!(u >= 0.0))
        throw std::domain_error("gaussian_tail: u must be >= 0");
    // P(|X| > u) = erfc(u / sqrt(2)); std::erfc keeps full relative accuracy
    // into the deep tail, far below the 1e-25 absolute we need.
    return std::erfc(u / std::sqrt(2.0));
}

double gaussian_quantile(double eps) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::domain_error("gaussian_quantile: eps must lie in (0,1]");
    if (eps >= 1.0) return 0.0;
    double lo = 0.0, hi = 40.0;
    // gaussian_tail is strictly decreasing; keep tail(lo) >= eps >= tail(hi).
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (gaussian_tail(mid) > eps)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace decoyrate
