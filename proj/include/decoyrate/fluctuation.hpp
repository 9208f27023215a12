#pragma once

#include <vector>

namespace decoyrate {

enum class Direction { Upper, Lower };

// Which pulse population the statistical sample pools count.
enum class PopulationMode { Sent, Received };

struct FluctuationModel {
    enum class Kind { None, StandardError, Hoeffding };
    Kind kind = Kind::None;
    double u_alpha = 0.0; // standard-error multiple
    double eps = 0.0;     // Hoeffding two-sided failure probability

    static FluctuationModel none() { return {}; }
    static FluctuationModel standard_error(double u) {
        return {Kind::StandardError, u, 0.0};
    }
    static FluctuationModel hoeffding(double eps) {
        return {Kind::Hoeffding, 0.0, eps};
    }
};

// Worst-case perturbation of a measured rate statistic.
//   StandardError: value +- u * sqrt(value / trials)   (Poissonian form)
//   Hoeffding:     value +- sqrt(ln(2/eps) / (2 trials))
//   None:          value
// Result clamped to [0,1]. Throws std::domain_error when trials <= 0 with an
// active model or value is outside [0,1].
double perturbed_rate_stat(double value, double trials, Direction dir,
                           const FluctuationModel& model);

// Random-sampling deviation between the Z-pool phase error rate and the
// X-pool bit error rate: theta = sqrt((n_x + n_z) / (2 n_x n_z) * ln(1/eps)).
double phase_error_deviation(double n_x, double n_z, double eps);

struct PoolCounts {
    double sent = 0.0;     // pulses of this intensity leaving the source
    double sifted_z = 0.0; // both parties chose Z (optionally detected)
    double sifted_x = 0.0; // both parties chose X (optionally detected)
};

struct SampleCounts {
    PopulationMode mode = PopulationMode::Sent;
    std::vector<PoolCounts> per_intensity;
};

// Expected pool sizes: SENT pools are N * p * (basis factor); RECEIVED pools
// additionally multiply by the intensity gain. The basis factor is q_z^e and
// (1-q_z)^e with e the sifting exponent (2: both parties biased, 1: one side).
// gains[i] pairs with intensity_probs[i]; probabilities must sum to 1.
SampleCounts expected_counts(double n_pulses,
                             const std::vector<double>& intensity_probs,
                             double q_z, int sifting_exponent,
                             PopulationMode mode,
                             const std::vector<double>& gains);

} // namespace decoyrate
