#pragma once

namespace decoyrate {

// Weak-coherent-pulse source + lossy fiber + threshold detector.
// All detection statistics below are closed forms of these parameters.
struct ChannelParams {
    double dark_count_yield = 1.7e-6;    // Y0
    double detector_efficiency = 0.045;  // eta_det
    double detector_error = 0.033;       // e_det, misalignment
    double vacuum_error = 0.5;           // e0; dark counts are random
    double loss_db = 0.0;                // t
    double fiber_loss_db_per_km = 0.2;   // alpha, for distance-based grids

    static ChannelParams at_distance(double km, ChannelParams base);
    static ChannelParams at_distance(double km);
};

// Throws std::invalid_argument when a field is outside its range.
void validate(const ChannelParams& p);

// eta = eta_det * 10^(-t/10)
double transmittance(const ChannelParams& p);

// Y_i = Y0 + 1 - (1-eta)^i, clamped to [0,1]. i >= 0.
double yield_i(const ChannelParams& p, int i);

// Q_mu = Y0 + 1 - exp(-eta*mu)
double gain(const ChannelParams& p, double mu);

// E_mu * Q_mu = e0*Y0 + e_det*(1 - exp(-eta*mu))
double error_gain(const ChannelParams& p, double mu);

// E_mu; throws std::domain_error when Q_mu = 0.
double qber(const ChannelParams& p, double mu);

struct IntensityStats {
    double mu = 0.0;  // mean photon number
    double Q = 0.0;   // gain
    double E = 0.0;   // QBER
};

IntensityStats intensity_stats(const ChannelParams& p, double mu);

} // namespace decoyrate
