#include "decoyrate/fluctuation.hpp"

#include <cmath>
#include <stdexcept>

namespace decoyrate {

double perturbed_rate_stat(double value, double trials, Direction dir,
                           const FluctuationModel& model) {
    if (!(value >= 0.0 && value <= 1.0))
        throw std::domain_error("perturbed_rate_stat: value must lie in [0,1]");
    if (model.kind == FluctuationModel::Kind::None) return value;
    if (!(trials > 0.0))
        throw std::domain_error("perturbed_rate_stat: trials must be > 0");
    double dev;
    if (model.kind == FluctuationModel::Kind::StandardError)
        dev = model.u_alpha * std::sqrt(value / trials);
    else
        dev = std::sqrt(std::log(2.0 / model.eps) / (2.0 * trials));
    double v = dir == Direction::Upper ? value + dev : value - dev;
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

double phase_error_deviation(double n_x, double n_z, double eps) {
    if (!(n_x > 0.0 && n_z > 0.0))
        throw std::domain_error("phase_error_deviation: pool counts must be > 0");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("phase_error_deviation: eps must lie in (0,1)");
    return std::sqrt((n_x + n_z) / (2.0 * n_x * n_z) * std::log(1.0 / eps));
}

SampleCounts expected_counts(double n_pulses,
                             const std::vector<double>& intensity_probs,
                             double q_z, int sifting_exponent,
                             PopulationMode mode,
                             const std::vector<double>& gains) {
    if (!(n_pulses > 0.0))
        throw std::invalid_argument("expected_counts: n_pulses must be > 0");
    if (!(q_z >= 0.0 && q_z <= 1.0))
        throw std::invalid_argument("expected_counts: q_z must lie in [0,1]");
    if (sifting_exponent != 1 && sifting_exponent != 2)
        throw std::invalid_argument("expected_counts: sifting exponent must be 1 or 2");
    if (gains.size() != intensity_probs.size())
        throw std::invalid_argument("expected_counts: one gain per intensity required");
    double sum = 0.0;
    for (double p : intensity_probs) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("expected_counts: probabilities must lie in [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("expected_counts: intensity probabilities must sum to 1");

    double zf = sifting_exponent == 2 ? q_z * q_z : q_z;
    double xf = sifting_exponent == 2 ? (1.0 - q_z) * (1.0 - q_z) : 1.0 - q_z;
    SampleCounts out;
    out.mode = mode;
    out.per_intensity.reserve(intensity_probs.size());
    for (std::size_t i = 0; i < intensity_probs.size(); ++i) {
        double detected = mode == PopulationMode::Received ? gains[i] : 1.0;
        PoolCounts c;
        c.sent = n_pulses * intensity_probs[i];
        c.sifted_z = c.sent * zf * detected;
        c.sifted_x = c.sent * xf * detected;
        if (c.sifted_z < 0.0) c.sifted_z = 0.0;
        if (c.sifted_x < 0.0) c.sifted_x = 0.0;
        out.per_intensity.push_back(c);
    }
    return out;
}

} // namespace decoyrate
