#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "decoyrate/optimizer.hpp"

using namespace decoyrate;

TEST_CASE("1d quadratic") {
    SearchSpace space{{{0.0, 1.0}}};
    auto f = [](const std::vector<double>& x) {
        return -(x[0] - 0.3) * (x[0] - 0.3);
    };
    OptimizationResult r = maximize_rate(f, space);
    CHECK(std::abs(r.x[0] - 0.3) < 1e-6);
    CHECK(r.value > -1e-12);
    // 12 grid probes plus 3 refinement rounds of one coordinate pass each
    // (2 bracket seeds + 40 golden steps + 1 midpoint).
    CHECK(r.evaluations == 12 + 3 * 43);
}

TEST_CASE("2d separable quadratic") {
    SearchSpace space{{{0.0, 1.0}, {0.0, 1.0}}};
    auto f = [](const std::vector<double>& x) {
        return -(x[0] - 0.25) * (x[0] - 0.25) - (x[1] - 0.75) * (x[1] - 0.75);
    };
    OptimizationResult r = maximize_rate(f, space);
    CHECK(std::abs(r.x[0] - 0.25) < 1e-6);
    CHECK(std::abs(r.x[1] - 0.75) < 1e-6);
    CHECK(r.evaluations == 144 + 3 * 2 * 43);
}

TEST_CASE("grid sweep order and tie-breaking") {
    // First dimension is the outermost loop; on a flat landscape the first
    // grid point (all lower bounds) is kept.
    SearchSpace space{{{0.2, 0.8}, {0.1, 0.9}}};
    std::vector<std::vector<double>> seen;
    auto f = [&](const std::vector<double>& x) {
        if (seen.size() < 13) seen.push_back(x);
        return 5.0;
    };
    OptimizationResult r = maximize_rate(f, space);
    CHECK(r.value == 5.0);
    CHECK(r.x[0] == 0.2);
    CHECK(r.x[1] == 0.1);
    CHECK(r.converged);
    REQUIRE(seen.size() == 13);
    for (int i = 0; i < 12; ++i) CHECK(seen[i][0] == 0.2);
    CHECK(seen[0][1] == 0.1);
    CHECK(seen[11][1] == 0.9);
    CHECK(seen[1][1] > seen[0][1]);
    CHECK(seen[12][0] > 0.2);
    CHECK(seen[12][1] == 0.1);
}

TEST_CASE("degenerate fixed dimension") {
    SearchSpace space{{{0.5, 0.5}, {0.0, 1.0}}};
    auto f = [](const std::vector<double>& x) {
        return -(x[1] - 0.6) * (x[1] - 0.6) - std::abs(x[0] - 0.5);
    };
    OptimizationResult r = maximize_rate(f, space);
    CHECK(r.x[0] == 0.5);
    CHECK(std::abs(r.x[1] - 0.6) < 1e-6);
}

TEST_CASE("zero refinement rounds reports convergence trivially") {
    SearchSpace space{{{0.0, 1.0}}};
    OptimizerSettings st;
    st.refinement_rounds = 0;
    auto f = [](const std::vector<double>& x) { return x[0]; };
    OptimizationResult r = maximize_rate(f, space, st);
    CHECK(r.converged);
    CHECK(r.x[0] == 1.0);
    CHECK(r.evaluations == 12);
}

TEST_CASE("input validation") {
    auto f = [](const std::vector<double>&) { return 0.0; };
    CHECK_THROWS_AS(maximize_rate(f, SearchSpace{}), std::invalid_argument);
    CHECK_THROWS_AS(maximize_rate(f, SearchSpace{{{1.0, 0.0}}}),
                    std::invalid_argument);
    double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(maximize_rate(f, SearchSpace{{{0.0, nan}}}),
                    std::invalid_argument);
    OptimizerSettings st;
    st.grid_points = 1;
    CHECK_THROWS_AS(maximize_rate(f, SearchSpace{{{0.0, 1.0}}}, st),
                    std::invalid_argument);
    st = OptimizerSettings{};
    st.refinement_rounds = -1;
    CHECK_THROWS_AS(maximize_rate(f, SearchSpace{{{0.0, 1.0}}}, st),
                    std::invalid_argument);
}
