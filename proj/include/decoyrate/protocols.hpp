#pragma once

#include "decoyrate/channel.hpp"
#include "decoyrate/decoy.hpp"
#include "decoyrate/fluctuation.hpp"
#include "decoyrate/security.hpp"

namespace decoyrate {

enum class ProtocolKind { UcWei, UcRaymond, UcBoth, T12 };

// T12 single-bit-error estimation: TS samples the signal state's opposite
// basis (that pool is disclosed and removed from the key), TD samples the
// second decoy, Combined takes the better of the two pointwise.
enum class EstimationMethod { TS, TD, Combined };

struct ProtocolConfig {
    ProtocolKind kind = ProtocolKind::UcWei;
    double n_pulses = 1e12; // N, sent pulses
    double mu = 0.5;        // signal intensity
    double nu = 0.1;        // decoy intensity (first decoy for T12)
    double nu2 = 0.01;      // second decoy (T12 only)
    double p_mu = 0.5;
    double p_nu = 0.3;      // remainder of the simplex: vacuum (nu2 for T12)
    double q_z = 0.9;       // Z-basis bias, both parties
    double f_ec = 1.16;     // error-correction inefficiency
    int sifting_exponent = 2; // 2: q_z^2 sifting, 1: q_z ("Change q_z^2 into q_z")
    EstimationMethod estimation = EstimationMethod::TS;
    double zeta = 1e-10;    // final-key UC trace-distance target
    int n_pe = 0;           // 0: family default (UC-Wei / T12: 4, smooth-entropy: 2)
    FluctuationModel::Kind fluctuation = FluctuationModel::Kind::StandardError;
    PopulationMode population = PopulationMode::Sent;
    // UC-Raymond only: permit mu < nu; the decoy estimator then runs with the
    // larger intensity in the signal role while the key still comes from mu.
    bool allow_swapped_intensities = false;
};

int resolved_n_pe(const ProtocolConfig& cfg);
SecurityFamily family_of(ProtocolKind kind);

// Secure rate per sent pulse plus the intermediates needed for audit.
// Infeasible parameter points (intensity ordering, probability simplex,
// collapsed decoy bounds) yield rate 0 with feasible = false instead of
// throwing, so optimizers can probe freely.
struct RateResult {
    double rate = 0.0;
    bool feasible = true;
    bool collapsed = false; // decoy yield bound collapsed
    double Q_mu = 0.0, E_mu = 0.0;
    double Y0_L = 0.0, Y1_L = 0.0, Q1_L = 0.0, Q0 = 0.0;
    double e1_U = 0.0;  // single-photon bit error bound entering the key term
    double e_ph = 0.0;  // phase error bound after sampling deviation
    double theta = 0.0; // applied phase-error sampling deviation (GLLP only)
    double n_sift = 0.0;
    double leak_ec = 0.0; // f_ec * H(E) per sifted key bit
    double ev_bits = 0.0, pa_bits = 0.0;
    double delta_mu = 0.0, delta_nu = 0.0; // finite corrections per key pool
};

RateResult rate_uc_wei(const ProtocolConfig& cfg, const ChannelParams& ch);
RateResult rate_uc_raymond(const ProtocolConfig& cfg, const ChannelParams& ch);
RateResult rate_uc_both(const ProtocolConfig& cfg, const ChannelParams& ch);
RateResult rate_t12(const ProtocolConfig& cfg, const ChannelParams& ch);

// Same formulas with fluctuation off, no sampling deviation, no finite
// corrections, and post-processing costs amortized away.
RateResult asymptotic_rate(const ProtocolConfig& cfg, const ChannelParams& ch);

// Dispatch on cfg.kind.
RateResult evaluate(const ProtocolConfig& cfg, const ChannelParams& ch);

// Delta(n) = 7 sqrt(log2(2/eps_bar)/n) + 2 log2(1/eps_pa)/n
double finite_correction_delta(double n, double eps_bar, double eps_pa);

// Expected statistical pools for this protocol on this channel: intensities
// (mu, nu, remainder class), the configured basis bias and sifting exponent,
// and the configured population mode.
SampleCounts expected_counts(const ProtocolConfig& cfg, const ChannelParams& ch);

} // namespace decoyrate
