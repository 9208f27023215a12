#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "decoyrate/channel.hpp"
#include "decoyrate/protocols.hpp"

namespace decoyrate {

// Raw counts for one pulse-intensity class plus the derived empirical
// statistics. qber_emp is 0 when the class recorded no clicks.
struct IntensityCounts {
    double intensity = 0.0;
    double probability = 0.0;
    std::uint64_t sent = 0;
    std::uint64_t clicks = 0;
    std::uint64_t errors = 0;
    double gain_emp = 0.0;
    double qber_emp = 0.0;
};

struct SimulationRun {
    std::uint64_t seed = 0;
    std::uint64_t pulses = 0;
    std::vector<IntensityCounts> per_intensity;
    std::string generator;
};

// Identifier of the sampling algorithm, recorded in every output so archived
// runs stay reproducible. Bump the suffix if the draw sequence ever changes.
extern const char* const kGeneratorId;

// Pulse-level Monte Carlo of the threshold-detector channel. Per pulse, in
// this order: intensity class by cumulative probability, photon number by
// inverse-CDF Poisson sampling (truncated at 20 photons, tail folded into the
// top bin), a click draw against the n-photon yield, and, on a click, an
// error draw against the conditional error probability. Identical
// (channel, config, pulses, seed) always reproduce the same counts.
//
// The third pulse class is vacuum for the vacuum+weak protocols and the
// second decoy intensity for two-decoy protocols.
SimulationRun simulate_counts(const ChannelParams& ch, const ProtocolConfig& cfg,
                              std::uint64_t pulses, std::uint64_t seed);

} // namespace decoyrate
