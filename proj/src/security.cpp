#include "decoyrate/security.hpp"

#include <cmath>
#include <stdexcept>

namespace decoyrate {

double zeta_from_gllp_failure(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::domain_error("zeta_from_gllp_failure: eps must lie in [0,1]");
    return std::sqrt(eps * (2.0 - eps));
}

double gllp_failure_from_zeta(double zeta) {
    if (!(zeta >= 0.0 && zeta <= 1.0))
        throw std::domain_error("gllp_failure_from_zeta: zeta must lie in [0,1]");
    // 1 - sqrt(1 - z^2) rewritten to avoid cancellation for small zeta.
    return zeta * zeta / (1.0 + std::sqrt(1.0 - zeta * zeta));
}

SecurityBudget allocate_budget(double zeta, SecurityFamily family, int n_pe) {
    if (!(zeta > 0.0 && zeta < 1.0))
        throw std::invalid_argument("allocate_budget: zeta must lie in (0,1)");
    if (n_pe < 1)
        throw std::invalid_argument("allocate_budget: n_pe must be >= 1");
    SecurityBudget b;
    b.zeta_target = zeta;
    b.family = family;
    b.n_pe = n_pe;
    if (family == SecurityFamily::Gllp) {
        double share = gllp_failure_from_zeta(zeta) / (n_pe + 3);
        b.eps_ev = b.eps_pe = b.eps_pa = b.eps_ph = share;
    } else {
        double share = zeta / (n_pe + 4);
        b.eps_ev = b.eps_pe = b.eps_pa = share;
        b.eps_bar = 2.0 * share;
    }
    return b;
}

SecurityBudget allocate_budget(double zeta, SecurityFamily family, int n_pe,
                               double eps_ev, double eps_pe, double eps_pa,
                               double eps_tail) {
    if (!(zeta > 0.0 && zeta < 1.0))
        throw std::invalid_argument("allocate_budget: zeta must lie in (0,1)");
    if (n_pe < 1)
        throw std::invalid_argument("allocate_budget: n_pe must be >= 1");
    for (double e : {eps_ev, eps_pe, eps_pa, eps_tail})
        if (!(e > 0.0 && e < 1.0))
            throw std::invalid_argument("allocate_budget: explicit shares must lie in (0,1)");
    double total = eps_ev + n_pe * eps_pe + eps_pa + eps_tail;
    SecurityBudget b;
    b.zeta_target = zeta;
    b.family = family;
    b.n_pe = n_pe;
    b.eps_ev = eps_ev;
    b.eps_pe = eps_pe;
    b.eps_pa = eps_pa;
    if (family == SecurityFamily::Gllp) {
        if (total > gllp_failure_from_zeta(zeta))
            throw std::invalid_argument(
                "allocate_budget: explicit shares exceed the GLLP failure budget");
        b.eps_ph = eps_tail;
    } else {
        if (total > zeta)
            throw std::invalid_argument(
                "allocate_budget: explicit shares exceed the zeta budget");
        if (!(eps_pe < eps_tail))
            throw std::invalid_argument(
                "allocate_budget: smooth-entropy budgets require eps_pe < eps_bar");
        b.eps_bar = eps_tail;
    }
    return b;
}

double ev_cost(double n_sift, double eps_ev) {
    if (!(n_sift > 0.0))
        throw std::domain_error("ev_cost: n_sift must be > 0");
    if (!(eps_ev > 0.0 && eps_ev <= 1.0))
        throw std::domain_error("ev_cost: eps_ev must lie in (0,1]");
    return std::ceil(1.0 + std::log2(n_sift / eps_ev));
}

double pa_cost(double eps_pa) {
    if (!(eps_pa > 0.0 && eps_pa <= 1.0))
        throw std::domain_error("pa_cost: eps_pa must lie in (0,1]");
    return std::ceil(1.0 + 2.0 * std::log2(1.0 / eps_pa));
}

} // namespace decoyrate
