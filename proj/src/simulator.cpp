#include "decoyrate/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

namespace decoyrate {

const char* const kGeneratorId = "mt19937_64/inverse-cdf-poisson/v1";

namespace {

constexpr int kMaxPhotons = 20;

// 53-bit uniform in [0, 1).
double uniform53(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

struct PulseClass {
    double intensity = 0.0;
    double probability = 0.0;
    std::array<double, kMaxPhotons + 1> photon_cdf{};
};

PulseClass make_class(double mu, double prob) {
    PulseClass c;
    c.intensity = mu;
    c.probability = prob;
    double pmf = std::exp(-mu);
    double cum = 0.0;
    for (int i = 0; i < kMaxPhotons; ++i) {
        cum += pmf;
        c.photon_cdf[i] = std::min(cum, 1.0);
        pmf *= mu / (i + 1);
    }
    // Truncated tail mass folds into the top bin (< 1e-19 for mu <= 1).
    c.photon_cdf[kMaxPhotons] = 1.0;
    return c;
}

} // namespace

SimulationRun simulate_counts(const ChannelParams& ch, const ProtocolConfig& cfg,
                              std::uint64_t pulses, std::uint64_t seed) {
    if (pulses == 0)
        throw std::invalid_argument("simulate_counts: pulses must be positive");
    validate(ch);
    const double p_third = 1.0 - cfg.p_mu - cfg.p_nu;
    if (cfg.p_mu < 0.0 || cfg.p_nu < 0.0 || p_third < -1e-9)
        throw std::invalid_argument(
            "simulate_counts: intensity probabilities must lie on the simplex");

    const double third_intensity = cfg.kind == ProtocolKind::T12 ? cfg.nu2 : 0.0;
    const std::array<PulseClass, 3> classes = {
        make_class(cfg.mu, cfg.p_mu),
        make_class(cfg.nu, cfg.p_nu),
        make_class(third_intensity, std::max(p_third, 0.0)),
    };

    // Click and conditional-error probabilities indexed by photon number.
    const double eta = transmittance(ch);
    std::array<double, kMaxPhotons + 1> click_prob{};
    std::array<double, kMaxPhotons + 1> error_prob{};
    for (int i = 0; i <= kMaxPhotons; ++i) {
        click_prob[i] = yield_i(ch, i);
        const double detected = 1.0 - std::pow(1.0 - eta, i);
        const double err =
            ch.vacuum_error * ch.dark_count_yield + ch.detector_error * detected;
        error_prob[i] =
            click_prob[i] > 0.0 ? std::min(err / click_prob[i], 1.0) : 0.0;
    }

    std::mt19937_64 rng(seed);
    std::array<std::uint64_t, 3> sent{}, clicks{}, errors{};
    const double cut0 = classes[0].probability;
    const double cut1 = cut0 + classes[1].probability;
    for (std::uint64_t p = 0; p < pulses; ++p) {
        const double u = uniform53(rng);
        const int k = u < cut0 ? 0 : (u < cut1 ? 1 : 2);
        const double up = uniform53(rng);
        const auto& cdf = classes[k].photon_cdf;
        int n = 0;
        while (n < kMaxPhotons && up >= cdf[n]) ++n;
        ++sent[k];
        if (uniform53(rng) < click_prob[n]) {
            ++clicks[k];
            if (uniform53(rng) < error_prob[n]) ++errors[k];
        }
    }

    SimulationRun run;
    run.seed = seed;
    run.pulses = pulses;
    run.generator = kGeneratorId;
    run.per_intensity.reserve(3);
    for (int k = 0; k < 3; ++k) {
        IntensityCounts c;
        c.intensity = classes[k].intensity;
        c.probability = classes[k].probability;
        c.sent = sent[k];
        c.clicks = clicks[k];
        c.errors = errors[k];
        c.gain_emp =
            c.sent ? static_cast<double>(c.clicks) / static_cast<double>(c.sent) : 0.0;
        c.qber_emp =
            c.clicks ? static_cast<double>(c.errors) / static_cast<double>(c.clicks)
                     : 0.0;
        run.per_intensity.push_back(c);
    }
    return run;
}

} // namespace decoyrate
