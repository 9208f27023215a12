#include "decoyrate/protocols.hpp"

#include "decoyrate/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace decoyrate {

namespace {

constexpr double kMinTailProb = 0.001; // simplex floor for the unlisted intensity
constexpr double kPoolFloor = 2.0;     // degenerate statistical pools

double clamp(double v, double lo, double hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

struct SiftFactors { double zf, xf, sf; };

SiftFactors sift_factors(double q_z, int exponent) {
    if (exponent == 2) {
        double zf = q_z * q_z, xf = (1.0 - q_z) * (1.0 - q_z);
        return {zf, xf, zf + xf};
    }
    return {q_z, 1.0 - q_z, 1.0};
}

// The budget and the derived fluctuation model depend only on
// (zeta, family, n_pe, kind); cache them across optimizer probes.
std::pair<SecurityBudget, FluctuationModel>
resolve_budget_model(double zeta, SecurityFamily family, int n_pe,
                     FluctuationModel::Kind kind, bool asymptotic) {
    using Key = std::tuple<double, int, int, int>;
    thread_local std::map<Key, std::pair<SecurityBudget, FluctuationModel>> cache;
    Key key{zeta, static_cast<int>(family), n_pe, static_cast<int>(kind)};
    auto it = cache.find(key);
    if (it == cache.end()) {
        SecurityBudget b = allocate_budget(zeta, family, n_pe);
        FluctuationModel m = FluctuationModel::none();
        if (kind == FluctuationModel::Kind::StandardError)
            m = FluctuationModel::standard_error(gaussian_quantile(b.eps_pe));
        else if (kind == FluctuationModel::Kind::Hoeffding)
            m = FluctuationModel::hoeffding(b.eps_pe);
        it = cache.emplace(key, std::make_pair(b, m)).first;
    }
    auto out = it->second;
    if (asymptotic) out.second = FluctuationModel::none();
    return out;
}

RateResult infeasible_zero() {
    RateResult r;
    r.feasible = false;
    return r;
}

RateResult collapsed_zero() {
    RateResult r;
    r.feasible = false;
    r.collapsed = true;
    return r;
}

double finalize_rate(double r) {
    if (std::isnan(r)) return 0.0;
    return clamp(r, 0.0, 1.0);
}

// Vacuum+weak bounds on worst-case-perturbed statistics. SENT pools perturb
// the gains and the vacuum yield over per-intensity sent counts and the decoy
// error gain over the sifted sent count; RECEIVED pools keep gains central
// and perturb only the error gain over the detected sifted count.
DecoyEstimate perturbed_vw_estimate(const ChannelParams& ch, double n_pulses,
                                    double mu_hi, double nu_lo, double p_hi,
                                    double p_lo, double p_0, double sf,
                                    PopulationMode population,
                                    const FluctuationModel& model,
                                    double* y0_low_out) {
    double q_hi = gain(ch, mu_hi);
    double q_lo = gain(ch, nu_lo);
    double eq_lo = error_gain(ch, nu_lo);
    double y0 = ch.dark_count_yield;

    double q_hi_u, q_lo_l, y0_u, y0_l, eq_lo_u;
    if (population == PopulationMode::Sent) {
        q_hi_u = perturbed_rate_stat(q_hi, n_pulses * p_hi, Direction::Upper, model);
        q_lo_l = perturbed_rate_stat(q_lo, n_pulses * p_lo, Direction::Lower, model);
        y0_u = perturbed_rate_stat(y0, n_pulses * p_0, Direction::Upper, model);
        y0_l = perturbed_rate_stat(y0, n_pulses * p_0, Direction::Lower, model);
        eq_lo_u = perturbed_rate_stat(eq_lo, n_pulses * p_lo * sf, Direction::Upper, model);
    } else {
        q_hi_u = q_hi;
        q_lo_l = q_lo;
        y0_u = y0_l = y0;
        double pool = std::max(n_pulses * p_lo * sf * q_lo, kPoolFloor);
        eq_lo_u = perturbed_rate_stat(eq_lo, pool, Direction::Upper, model);
    }
    *y0_low_out = y0_l;

    IntensityStats sig{mu_hi, q_hi_u, 0.0};
    IntensityStats dec{nu_lo, q_lo_l, q_lo_l > 0.0 ? eq_lo_u / q_lo_l : 0.0};
    return vacuum_weak_bounds(sig, dec, y0_u, y0_l);
}

RateResult wei_impl(const ProtocolConfig& cfg, const ChannelParams& ch, bool asym) {
    auto [budget, model] = resolve_budget_model(
        cfg.zeta, SecurityFamily::Gllp, resolved_n_pe(cfg), cfg.fluctuation, asym);
    double p_0 = 1.0 - cfg.p_mu - cfg.p_nu;
    auto [zf, xf, sf] = sift_factors(cfg.q_z, cfg.sifting_exponent);
    if (!(cfg.nu < cfg.mu) || !(cfg.nu > 0.0) || p_0 < kMinTailProb ||
        !(cfg.p_mu > 0.0) || !(cfg.p_nu > 0.0))
        return infeasible_zero();

    double y0_low = 0.0;
    DecoyEstimate est = perturbed_vw_estimate(ch, cfg.n_pulses, cfg.mu, cfg.nu,
                                              cfg.p_mu, cfg.p_nu, p_0, sf,
                                              cfg.population, model, &y0_low);
    if (est.collapsed) return collapsed_zero();

    RateResult r;
    r.Q_mu = gain(ch, cfg.mu);
    r.E_mu = qber(ch, cfg.mu);
    r.Y0_L = est.Y0_L;
    r.Y1_L = est.Y1_L;
    r.Q1_L = est.Q1_L;
    r.Q0 = est.Q0;
    r.e1_U = est.e1_U;

    if (asym) {
        r.e_ph = clamp(est.e1_U, 0.0, 0.5);
    } else {
        double nz = std::max(cfg.n_pulses * cfg.p_mu * zf * r.Q_mu, kPoolFloor);
        double nx = std::max(cfg.n_pulses * cfg.p_mu * xf * r.Q_mu, kPoolFloor);
        double th = phase_error_deviation(nx, nz, budget.eps_ph);
        // Scale the worst-case sampling deviation by the binomial spread of
        // the estimated error rate; a rare-error pool fluctuates far less
        // than the distribution-free bound allows.
        double ec = clamp(est.e1_U, 0.0, 0.5);
        r.theta = th * 2.0 * std::sqrt(ec * (1.0 - ec));
        r.e_ph = clamp(est.e1_U + r.theta, 0.0, 0.5);
    }

    r.leak_ec = cfg.f_ec * binary_entropy(r.E_mu);
    double inner = -r.Q_mu * r.leak_ec +
                   r.Q1_L * (1.0 - binary_entropy(r.e_ph)) + r.Q0;
    double rate = cfg.p_mu * zf * inner;
    if (!asym) {
        r.n_sift = std::max(cfg.n_pulses * cfg.p_mu * zf, kPoolFloor);
        r.ev_bits = ev_cost(r.n_sift, budget.eps_ev);
        r.pa_bits = pa_cost(budget.eps_pa);
        rate -= (r.ev_bits + r.pa_bits) / cfg.n_pulses;
    }
    r.rate = finalize_rate(rate);
    return r;
}

RateResult smooth_entropy_impl(const ProtocolConfig& cfg, const ChannelParams& ch,
                               bool both, bool asym) {
    auto [budget, model] = resolve_budget_model(
        cfg.zeta, SecurityFamily::SmoothEntropy, resolved_n_pe(cfg),
        cfg.fluctuation, asym);
    double p_0 = 1.0 - cfg.p_mu - cfg.p_nu;
    auto [zf, xf, sf] = sift_factors(cfg.q_z, cfg.sifting_exponent);
    (void)xf;
    if (std::abs(cfg.mu - cfg.nu) < 1e-6 || !(cfg.nu > 0.0) || !(cfg.mu > 0.0) ||
        p_0 < kMinTailProb || !(cfg.p_mu > 0.0) || !(cfg.p_nu > 0.0))
        return infeasible_zero();
    bool swapped = cfg.mu < cfg.nu;
    if (swapped && (both || !cfg.allow_swapped_intensities))
        return infeasible_zero();

    double hi = swapped ? cfg.nu : cfg.mu;
    double lo = swapped ? cfg.mu : cfg.nu;
    double p_hi = swapped ? cfg.p_nu : cfg.p_mu;
    double p_lo = swapped ? cfg.p_mu : cfg.p_nu;

    double y0_low = 0.0;
    DecoyEstimate est = perturbed_vw_estimate(ch, cfg.n_pulses, hi, lo, p_hi,
                                              p_lo, p_0, sf, cfg.population,
                                              model, &y0_low);
    if (est.collapsed) return collapsed_zero();

    RateResult r;
    r.Q_mu = gain(ch, cfg.mu);
    r.E_mu = qber(ch, cfg.mu);
    r.Y0_L = est.Y0_L;
    r.Y1_L = est.Y1_L;
    r.e1_U = clamp(est.e1_U, 0.0, 0.5);
    r.e_ph = r.e1_U;
    r.leak_ec = cfg.f_ec * binary_entropy(r.E_mu);

    double one_minus_h = 1.0 - binary_entropy(r.e1_U);
    double rate = 0.0;
    int n_keys = both ? 2 : 1;
    for (int k = 0; k < n_keys; ++k) {
        double x = k == 0 ? cfg.mu : cfg.nu;
        double px = k == 0 ? cfg.p_mu : cfg.p_nu;
        double qx = gain(ch, x);
        double ex = qber(ch, x);
        double q1 = x * std::exp(-x) * est.Y1_L;
        double q0 = est.Y0_L * std::exp(-x);
        double s = (q0 + q1 * one_minus_h) / qx;
        double dn = 0.0;
        if (!asym) {
            double n = std::max(cfg.n_pulses * px * zf * qx, kPoolFloor);
            dn = finite_correction_delta(n, budget.eps_bar, budget.eps_pa);
        }
        double term = px * zf * qx * (s - dn - cfg.f_ec * binary_entropy(ex));
        if (std::isnan(term)) term = 0.0;
        rate += std::max(term, 0.0);
        if (k == 0) {
            r.Q1_L = q1;
            r.Q0 = q0;
            r.n_sift = cfg.n_pulses * cfg.p_mu * zf * qx;
            r.delta_mu = dn;
        } else {
            r.delta_nu = dn;
        }
    }
    r.rate = finalize_rate(rate);
    return r;
}

RateResult t12_method_impl(const ProtocolConfig& cfg, const ChannelParams& ch,
                           EstimationMethod method, bool asym) {
    auto [budget, model] = resolve_budget_model(
        cfg.zeta, SecurityFamily::SmoothEntropy, resolved_n_pe(cfg),
        cfg.fluctuation, asym);
    double p_n2 = 1.0 - cfg.p_mu - cfg.p_nu;
    if (!(cfg.nu < cfg.mu) || !(cfg.nu2 < cfg.nu) || !(cfg.nu2 > 0.0) ||
        p_n2 < kMinTailProb || !(cfg.p_mu > 0.0) || !(cfg.p_nu > 0.0))
        return infeasible_zero();

    double zf = cfg.q_z * cfg.q_z;
    double xf = (1.0 - cfg.q_z) * (1.0 - cfg.q_z);
    // Detection statistics enter the estimator at their expected values; the
    // estimation methods differ in which received error pool they sample.
    IntensityStats sig = intensity_stats(ch, cfg.mu);
    IntensityStats d1 = intensity_stats(ch, cfg.nu);
    IntensityStats d2 = intensity_stats(ch, cfg.nu2);
    DecoyEstimate est = two_weak_decoy_bounds(sig, d1, d2);
    if (est.collapsed) return collapsed_zero();

    RateResult r;
    r.Q_mu = sig.Q;
    r.E_mu = sig.E;
    r.Y0_L = est.Y0_L;
    r.Y1_L = est.Y1_L;
    r.Q1_L = cfg.mu * std::exp(-cfg.mu) * est.Y1_L;
    r.Q0 = est.Y0_L * std::exp(-cfg.mu);
    r.leak_ec = cfg.f_ec * binary_entropy(sig.E);
    r.n_sift = cfg.n_pulses * cfg.p_mu * zf * sig.Q;

    double rate = 0.0;
    for (int basis = 0; basis < 2; ++basis) { // 0: Z, 1: X
        double kf = basis == 0 ? zf : xf;
        double of = basis == 0 ? xf : zf;
        double e1;
        if (method == EstimationMethod::TS) {
            if (basis == 1) continue; // the X pool is disclosed for estimation
            double pool = std::max(cfg.n_pulses * cfg.p_mu * of * sig.Q, kPoolFloor);
            double em_u = perturbed_rate_stat(sig.E, pool, Direction::Upper, model);
            e1 = (em_u * sig.Q * std::exp(cfg.mu) - 0.5 * est.Y0_L) /
                 (est.Y1_L * cfg.mu);
        } else {
            double pool = std::max(cfg.n_pulses * p_n2 * of * d2.Q, kPoolFloor);
            double e2_u = perturbed_rate_stat(d2.E, pool, Direction::Upper, model);
            e1 = (e2_u * d2.Q * std::exp(cfg.nu2) - 0.5 * est.Y0_L) /
                 (est.Y1_L * cfg.nu2);
        }
        e1 = clamp(e1, 0.0, 0.5);
        double s = (r.Q0 + r.Q1_L * (1.0 - binary_entropy(e1))) / sig.Q;
        double dn = 0.0;
        if (!asym) {
            double n = std::max(cfg.n_pulses * cfg.p_mu * kf * sig.Q, kPoolFloor);
            dn = finite_correction_delta(n, budget.eps_bar, budget.eps_pa);
        }
        double term = cfg.p_mu * kf * sig.Q * (s - dn - r.leak_ec);
        if (std::isnan(term)) term = 0.0;
        rate += std::max(term, 0.0);
        if (basis == 0) {
            r.e1_U = e1;
            r.e_ph = e1;
            r.delta_mu = dn;
        } else {
            r.delta_nu = dn;
        }
    }
    r.rate = finalize_rate(rate);
    return r;
}

RateResult t12_impl(const ProtocolConfig& cfg, const ChannelParams& ch, bool asym) {
    if (cfg.population != PopulationMode::Received)
        throw std::invalid_argument(
            "rate_t12: statistics are collected on received pulses;"
            " population must be RECEIVED");
    if (cfg.estimation != EstimationMethod::Combined)
        return t12_method_impl(cfg, ch, cfg.estimation, asym);
    RateResult ts = t12_method_impl(cfg, ch, EstimationMethod::TS, asym);
    RateResult td = t12_method_impl(cfg, ch, EstimationMethod::TD, asym);
    return td.rate > ts.rate ? td : ts;
}

RateResult dispatch(const ProtocolConfig& cfg, const ChannelParams& ch, bool asym) {
    switch (cfg.kind) {
        case ProtocolKind::UcWei: return wei_impl(cfg, ch, asym);
        case ProtocolKind::UcRaymond: return smooth_entropy_impl(cfg, ch, false, asym);
        case ProtocolKind::UcBoth: return smooth_entropy_impl(cfg, ch, true, asym);
        case ProtocolKind::T12: return t12_impl(cfg, ch, asym);
    }
    throw std::logic_error("evaluate: unknown protocol kind");
}

} // namespace

int resolved_n_pe(const ProtocolConfig& cfg) {
    if (cfg.n_pe > 0) return cfg.n_pe;
    switch (cfg.kind) {
        case ProtocolKind::UcWei:
        case ProtocolKind::T12:
            return 4;
        default:
            return 2;
    }
}

SecurityFamily family_of(ProtocolKind kind) {
    return kind == ProtocolKind::UcWei ? SecurityFamily::Gllp
                                       : SecurityFamily::SmoothEntropy;
}

RateResult rate_uc_wei(const ProtocolConfig& cfg, const ChannelParams& ch) {
    if (cfg.kind != ProtocolKind::UcWei)
        throw std::invalid_argument("rate_uc_wei: config kind mismatch");
    return wei_impl(cfg, ch, false);
}

RateResult rate_uc_raymond(const ProtocolConfig& cfg, const ChannelParams& ch) {
    if (cfg.kind != ProtocolKind::UcRaymond)
        throw std::invalid_argument("rate_uc_raymond: config kind mismatch");
    return smooth_entropy_impl(cfg, ch, false, false);
}

RateResult rate_uc_both(const ProtocolConfig& cfg, const ChannelParams& ch) {
    if (cfg.kind != ProtocolKind::UcBoth)
        throw std::invalid_argument("rate_uc_both: config kind mismatch");
    return smooth_entropy_impl(cfg, ch, true, false);
}

RateResult rate_t12(const ProtocolConfig& cfg, const ChannelParams& ch) {
    if (cfg.kind != ProtocolKind::T12)
        throw std::invalid_argument("rate_t12: config kind mismatch");
    return t12_impl(cfg, ch, false);
}

RateResult asymptotic_rate(const ProtocolConfig& cfg, const ChannelParams& ch) {
    return dispatch(cfg, ch, true);
}

RateResult evaluate(const ProtocolConfig& cfg, const ChannelParams& ch) {
    return dispatch(cfg, ch, false);
}

double finite_correction_delta(double n, double eps_bar, double eps_pa) {
    if (!(n > 0.0))
        throw std::domain_error("finite_correction_delta: n must be > 0");
    if (!(eps_bar > 0.0 && eps_bar < 1.0) || !(eps_pa > 0.0 && eps_pa < 1.0))
        throw std::domain_error("finite_correction_delta: eps must lie in (0,1)");
    return 7.0 * std::sqrt(std::log2(2.0 / eps_bar) / n) +
           2.0 * std::log2(1.0 / eps_pa) / n;
}

SampleCounts expected_counts(const ProtocolConfig& cfg, const ChannelParams& ch) {
    const double third = cfg.kind == ProtocolKind::T12 ? cfg.nu2 : 0.0;
    const std::vector<double> probs = {cfg.p_mu, cfg.p_nu,
                                       1.0 - cfg.p_mu - cfg.p_nu};
    const std::vector<double> gains = {gain(ch, cfg.mu), gain(ch, cfg.nu),
                                       gain(ch, third)};
    return expected_counts(cfg.n_pulses, probs, cfg.q_z, cfg.sifting_exponent,
                           cfg.population, gains);
}

} // namespace decoyrate
