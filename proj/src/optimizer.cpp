#include "decoyrate/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace decoyrate {

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

// linspace including both endpoints.
std::vector<double> axis_points(double lo, double hi, int n) {
    std::vector<double> pts(n);
    double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) pts[i] = lo + step * i;
    pts.back() = hi;
    return pts;
}

} // namespace

OptimizationResult maximize_rate(
    const std::function<double(const std::vector<double>&)>& evaluate,
    const SearchSpace& space, const OptimizerSettings& settings) {
    const std::size_t dims = space.bounds.size();
    if (dims == 0)
        throw std::invalid_argument("maximize_rate: empty search space");
    for (auto& b : space.bounds)
        if (!(b[0] <= b[1]) || !std::isfinite(b[0]) || !std::isfinite(b[1]))
            throw std::invalid_argument("maximize_rate: invalid interval");
    if (settings.grid_points < 2 || settings.refinement_rounds < 0)
        throw std::invalid_argument("maximize_rate: invalid settings");

    OptimizationResult out;
    long long evals = 0;
    auto probe = [&](const std::vector<double>& x) {
        ++evals;
        return evaluate(x);
    };

    // Coarse full-factorial grid; first maximum in lexicographic order wins.
    const int n = settings.grid_points;
    std::vector<std::vector<double>> axes(dims);
    for (std::size_t d = 0; d < dims; ++d)
        axes[d] = axis_points(space.bounds[d][0], space.bounds[d][1], n);

    std::vector<int> idx(dims, 0);
    std::vector<double> x(dims), best_x(dims);
    double best = -std::numeric_limits<double>::infinity();
    for (;;) {
        for (std::size_t d = 0; d < dims; ++d) x[d] = axes[d][idx[d]];
        double v = probe(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
        std::size_t d = dims;
        while (d > 0) {
            --d;
            if (++idx[d] < n) break;
            idx[d] = 0;
            if (d == 0) goto grid_done;
        }
    }
grid_done:

    // Coordinate-wise golden-section refinement around the incumbent.
    std::vector<double> steps(dims);
    for (std::size_t d = 0; d < dims; ++d)
        steps[d] = (space.bounds[d][1] - space.bounds[d][0]) / (n - 1);

    x = best_x;
    double round_improvement = 0.0;
    for (int round = 0; round < settings.refinement_rounds; ++round) {
        double round_start = best;
        for (std::size_t d = 0; d < dims; ++d) {
            double a = std::max(space.bounds[d][0], x[d] - steps[d]);
            double b = std::min(space.bounds[d][1], x[d] + steps[d]);
            auto eval_at = [&](double t) {
                std::vector<double> y = x;
                y[d] = t;
                return probe(y);
            };
            double c = b - kGolden * (b - a);
            double e = a + kGolden * (b - a);
            double fc = eval_at(c), fe = eval_at(e);
            for (int it = 0; it < 40; ++it) {
                if (fc > fe) {
                    b = e;
                    e = c;
                    fe = fc;
                    c = b - kGolden * (b - a);
                    fc = eval_at(c);
                } else {
                    a = c;
                    c = e;
                    fc = fe;
                    e = a + kGolden * (b - a);
                    fe = eval_at(e);
                }
            }
            double t = 0.5 * (a + b);
            double ft = eval_at(t);
            if (ft > best) {
                best = ft;
                x[d] = t;
            }
        }
        for (auto& s : steps) s *= 0.35;
        round_improvement = best - round_start;
    }

    out.x = x;
    out.value = best;
    out.evaluations = evals;
    out.converged = settings.refinement_rounds == 0 ||
                    round_improvement <=
                        settings.tolerance * std::max(std::abs(best), 1e-300);
    return out;
}

} // namespace decoyrate
