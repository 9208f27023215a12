#include "decoyrate/decoy.hpp"

#include <cmath>
#include <stdexcept>

namespace decoyrate {

namespace {
constexpr double kVacuumError = 0.5; // e0: dark counts are random

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

DecoyEstimate collapsed_estimate(double y0) {
    DecoyEstimate d;
    d.Y0_L = clamp01(y0);
    d.collapsed = true;
    return d;
}
} // namespace

DecoyEstimate vacuum_weak_bounds(const IntensityStats& signal,
                                 const IntensityStats& decoy,
                                 double y0_yield, double y0_error) {
    double mu = signal.mu, nu = decoy.mu;
    if (!(mu > nu && nu > 0.0))
        throw std::invalid_argument(
            "vacuum_weak_bounds: requires signal.mu > decoy.mu > 0");

    double pref = mu / (mu * nu - nu * nu);
    double y1 = pref * (decoy.Q * std::exp(nu) -
                        signal.Q * std::exp(mu) * nu * nu / (mu * mu) -
                        ((mu * mu - nu * nu) / (mu * mu)) * y0_yield);
    if (!(y1 > 0.0)) return collapsed_estimate(y0_error);

    DecoyEstimate d;
    d.Y0_L = clamp01(y0_error);
    d.Y1_L = clamp01(y1);
    d.e1_U = clamp01((decoy.E * decoy.Q * std::exp(nu) - kVacuumError * y0_error) /
                     (y1 * nu));
    d.Q1_L = mu * std::exp(-mu) * d.Y1_L;
    d.Q0 = d.Y0_L * std::exp(-mu);
    return d;
}

DecoyEstimate two_weak_decoy_bounds(const IntensityStats& signal,
                                    const IntensityStats& decoy1,
                                    const IntensityStats& decoy2) {
    double mu = signal.mu, n1 = decoy1.mu, n2 = decoy2.mu;
    if (!(mu > n1 && n1 > n2 && n2 >= 0.0))
        throw std::invalid_argument(
            "two_weak_decoy_bounds: requires signal.mu > decoy1.mu > decoy2.mu >= 0");

    double y0 = (n1 * decoy2.Q * std::exp(n2) - n2 * decoy1.Q * std::exp(n1)) / (n1 - n2);
    if (y0 < 0.0) y0 = 0.0;

    double denom = mu * (n1 - n2) - n1 * n1 + n2 * n2;
    if (!(denom > 0.0)) return collapsed_estimate(y0);

    double y1 = (mu / denom) *
                (decoy1.Q * std::exp(n1) - decoy2.Q * std::exp(n2) -
                 ((n1 * n1 - n2 * n2) / (mu * mu)) * (signal.Q * std::exp(mu) - y0));
    if (!(y1 > 0.0)) return collapsed_estimate(y0);

    DecoyEstimate d;
    d.Y0_L = clamp01(y0);
    d.Y1_L = clamp01(y1);
    d.e1_U = clamp01((decoy1.E * decoy1.Q * std::exp(n1) -
                      decoy2.E * decoy2.Q * std::exp(n2)) /
                     ((n1 - n2) * y1));
    d.Q1_L = mu * std::exp(-mu) * d.Y1_L;
    d.Q0 = d.Y0_L * std::exp(-mu);
    return d;
}

} // namespace decoyrate
