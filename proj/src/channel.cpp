#include "decoyrate/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace decoyrate {

ChannelParams ChannelParams::at_distance(double km, ChannelParams base) {
    base.loss_db = base.fiber_loss_db_per_km * km;
    return base;
}

ChannelParams ChannelParams::at_distance(double km) {
    return at_distance(km, ChannelParams{});
}

void validate(const ChannelParams& p) {
    auto prob = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!prob(p.dark_count_yield))
        throw std::invalid_argument("channel: dark_count_yield must lie in [0,1]");
    if (!prob(p.detector_efficiency))
        throw std::invalid_argument("channel: detector_efficiency must lie in [0,1]");
    if (!prob(p.detector_error))
        throw std::invalid_argument("channel: detector_error must lie in [0,1]");
    if (p.vacuum_error != 0.5)
        throw std::invalid_argument("channel: vacuum_error is fixed at 0.5");
    if (!(p.loss_db >= 0.0))
        throw std::invalid_argument("channel: loss_db must be >= 0");
    if (!(p.fiber_loss_db_per_km > 0.0))
        throw std::invalid_argument("channel: fiber_loss_db_per_km must be > 0");
}

double transmittance(const ChannelParams& p) {
    return p.detector_efficiency * std::pow(10.0, -p.loss_db / 10.0);
}

double yield_i(const ChannelParams& p, int i) {
    if (i < 0) throw std::domain_error("yield_i: photon number must be >= 0");
    double eta = transmittance(p);
    double y = p.dark_count_yield + 1.0 - std::pow(1.0 - eta, i);
    if (y < 0.0) return 0.0;
    if (y > 1.0) return 1.0;
    return y;
}

double gain(const ChannelParams& p, double mu) {
    if (!(mu >= 0.0)) throw std::domain_error("gain: mu must be >= 0");
    return p.dark_count_yield + 1.0 - std::exp(-transmittance(p) * mu);
}

double error_gain(const ChannelParams& p, double mu) {
    if (!(mu >= 0.0)) throw std::domain_error("error_gain: mu must be >= 0");
    return p.vacuum_error * p.dark_count_yield +
           p.detector_error * (1.0 - std::exp(-transmittance(p) * mu));
}

double qber(const ChannelParams& p, double mu) {
    double q = gain(p, mu);
    if (q <= 0.0) throw std::domain_error("qber: gain is zero, QBER undefined");
    return error_gain(p, mu) / q;
}

IntensityStats intensity_stats(const ChannelParams& p, double mu) {
    IntensityStats s;
    s.mu = mu;
    s.Q = gain(p, mu);
    s.E = qber(p, mu);
    return s;
}

} // namespace decoyrate
