#pragma once

#include <array>
#include <functional>
#include <vector>

namespace decoyrate {

// Closed per-parameter intervals for the free parameters of a rate
// evaluation. Constraint handling (intensity ordering, probability simplex)
// lives in the objective, which returns 0 on infeasible points.
struct SearchSpace {
    std::vector<std::array<double, 2>> bounds;
};

struct OptimizerSettings {
    int grid_points = 12;
    int refinement_rounds = 3;
    double tolerance = 1e-6; // relative improvement considered converged
};

struct OptimizationResult {
    std::vector<double> x;
    double value = 0.0;
    long long evaluations = 0;
    bool converged = false;
};

// Deterministic maximization: full-factorial coarse grid, then coordinate-wise
// golden-section refinement around the incumbent, repeated for
// refinement_rounds with the bracket width shrinking each round. Ties on the
// grid break toward the lexicographically smallest parameter vector.
// Throws std::invalid_argument on an empty or inverted search space.
OptimizationResult maximize_rate(
    const std::function<double(const std::vector<double>&)>& evaluate,
    const SearchSpace& space, const OptimizerSettings& settings = {});

} // namespace decoyrate
