#pragma once

#include "decoyrate/channel.hpp"

namespace decoyrate {

// Single-photon bounds produced by decoy analysis. When the yield bound
// collapses (raw Y1_L <= 0) the estimate is flagged and the downstream
// key rate must be forced to 0; the exported fields are then vacuous
// (Y1_L = Q1_L = 0, e1_U = 1).
struct DecoyEstimate {
    double Y0_L = 0.0;
    double Y1_L = 0.0;
    double e1_U = 1.0;
    double Q1_L = 0.0; // mu e^-mu Y1_L for the signal intensity
    double Q0 = 0.0;   // Y0_L e^-mu
    bool collapsed = false;
};

// Vacuum + weak decoy estimator. Callers supply expected or worst-case
// perturbed statistics; y0_yield enters the Y1 bound (pessimistic: upper)
// and y0_error the e1 bound and Q0 (pessimistic: lower).
// Throws std::invalid_argument unless signal.mu > decoy.mu > 0.
DecoyEstimate vacuum_weak_bounds(const IntensityStats& signal,
                                 const IntensityStats& decoy,
                                 double y0_yield, double y0_error);

inline DecoyEstimate vacuum_weak_bounds(const IntensityStats& signal,
                                        const IntensityStats& decoy,
                                        double y0) {
    return vacuum_weak_bounds(signal, decoy, y0, y0);
}

// Two weak decoy estimator (nu1 > nu2 >= 0); the vacuum yield is itself
// estimated from the two decoys and clamped at 0. e1_U is the
// difference-quotient bound over the two decoy error rates.
// Throws std::invalid_argument unless signal.mu > decoy1.mu > decoy2.mu >= 0.
DecoyEstimate two_weak_decoy_bounds(const IntensityStats& signal,
                                    const IntensityStats& decoy1,
                                    const IntensityStats& decoy2);

} // namespace decoyrate
