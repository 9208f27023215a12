#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "decoyrate/numerics.hpp"
#include "decoyrate/protocols.hpp"

using namespace decoyrate;

namespace {

ChannelParams honest() {
    ChannelParams ch;
    ch.loss_db = 10.0;
    return ch;
}

ProtocolConfig base(ProtocolKind k) {
    ProtocolConfig c;
    c.kind = k;
    c.n_pulses = 1e12;
    c.mu = 0.5;
    c.nu = 0.1;
    c.q_z = 0.9;
    c.p_mu = 0.6;
    c.p_nu = 0.3;
    c.zeta = 1e-10;
    c.fluctuation = FluctuationModel::Kind::StandardError;
    return c;
}

ProtocolConfig t12_base(EstimationMethod m) {
    ProtocolConfig c = base(ProtocolKind::T12);
    c.nu2 = 0.01;
    c.p_mu = 0.9;
    c.p_nu = 0.05;
    c.population = PopulationMode::Received;
    c.estimation = m;
    return c;
}

} // namespace

TEST_CASE("pinned rates, one per protocol and fluctuation model") {
    ChannelParams ch = honest();

    ProtocolConfig wei = base(ProtocolKind::UcWei);
    CHECK(rate_uc_wei(wei, ch).rate ==
          doctest::Approx(0.0002238188887981365).epsilon(1e-12));
    wei.fluctuation = FluctuationModel::Kind::Hoeffding;
    CHECK(rate_uc_wei(wei, ch).rate ==
          doctest::Approx(0.0001084435434629808).epsilon(1e-12));
    wei.fluctuation = FluctuationModel::Kind::None;
    CHECK(rate_uc_wei(wei, ch).rate ==
          doctest::Approx(0.0002254003970609788).epsilon(1e-12));
    wei = base(ProtocolKind::UcWei);
    wei.sifting_exponent = 1;
    CHECK(rate_uc_wei(wei, ch).rate ==
          doctest::Approx(0.00024989575624991174).epsilon(1e-12));

    ProtocolConfig ray = base(ProtocolKind::UcRaymond);
    CHECK(rate_uc_raymond(ray, ch).rate ==
          doctest::Approx(0.00022445249896653444).epsilon(1e-12));
    ray.fluctuation = FluctuationModel::Kind::Hoeffding;
    CHECK(rate_uc_raymond(ray, ch).rate ==
          doctest::Approx(0.00013810947068553824).epsilon(1e-12));

    ProtocolConfig both = base(ProtocolKind::UcBoth);
    CHECK(rate_uc_both(both, ch).rate ==
          doctest::Approx(0.0002701854071630835).epsilon(1e-12));
    both.fluctuation = FluctuationModel::Kind::Hoeffding;
    CHECK(rate_uc_both(both, ch).rate ==
          doctest::Approx(0.0001706673648585712).epsilon(1e-12));

    CHECK(rate_t12(t12_base(EstimationMethod::TS), ch).rate ==
          doctest::Approx(0.000253316600016246).epsilon(1e-12));
    CHECK(rate_t12(t12_base(EstimationMethod::TD), ch).rate ==
          doctest::Approx(0.0002274494849806123).epsilon(1e-12));
}

TEST_CASE("pinned asymptotic rates") {
    ChannelParams ch = honest();
    ProtocolConfig wei = base(ProtocolKind::UcWei);
    ProtocolConfig ray = base(ProtocolKind::UcRaymond);
    double wa = asymptotic_rate(wei, ch).rate;
    CHECK(wa == doctest::Approx(0.00022694560170601004).epsilon(1e-12));
    // Finite-size machinery is the only difference between these two, so
    // their asymptotic limits coincide.
    CHECK(asymptotic_rate(ray, ch).rate == doctest::Approx(wa).epsilon(1e-12));

    CHECK(asymptotic_rate(t12_base(EstimationMethod::TS), ch).rate ==
          doctest::Approx(0.00025684588868376217).epsilon(1e-12));
    CHECK(asymptotic_rate(t12_base(EstimationMethod::TD), ch).rate ==
          doctest::Approx(0.0002705525314846952).epsilon(1e-12));
}

TEST_CASE("finite rates never exceed the asymptotic limit") {
    ChannelParams ch = honest();
    for (auto k : {ProtocolKind::UcWei, ProtocolKind::UcRaymond,
                   ProtocolKind::UcBoth}) {
        ProtocolConfig c = base(k);
        CHECK(evaluate(c, ch).rate <=
              asymptotic_rate(c, ch).rate * (1.0 + 1e-9) + 1e-15);
    }
    for (auto m : {EstimationMethod::TS, EstimationMethod::TD,
                   EstimationMethod::Combined}) {
        ProtocolConfig c = t12_base(m);
        CHECK(evaluate(c, ch).rate <=
              asymptotic_rate(c, ch).rate * (1.0 + 1e-9) + 1e-15);
    }
}

TEST_CASE("finite-key terms vanish with pulse count") {
    ChannelParams ch = honest();
    for (auto k : {ProtocolKind::UcWei, ProtocolKind::UcRaymond}) {
        ProtocolConfig c = base(k);
        c.fluctuation = FluctuationModel::Kind::None;
        c.n_pulses = 1e28;
        double asym = asymptotic_rate(c, ch).rate;
        CHECK(evaluate(c, ch).rate == doctest::Approx(asym).epsilon(1e-9));
    }
}

TEST_CASE("infeasible points report rate 0 instead of throwing") {
    ChannelParams ch = honest();

    ProtocolConfig wei = base(ProtocolKind::UcWei);
    wei.mu = 0.1;
    wei.nu = 0.5;
    RateResult r = rate_uc_wei(wei, ch);
    CHECK(r.rate == 0.0);
    CHECK(!r.feasible);

    ProtocolConfig ray = base(ProtocolKind::UcRaymond);
    ray.nu = ray.mu;
    r = rate_uc_raymond(ray, ch);
    CHECK(r.rate == 0.0);
    CHECK(!r.feasible);

    ProtocolConfig nodecoy = base(ProtocolKind::UcWei);
    nodecoy.p_nu = 0.0;
    r = rate_uc_wei(nodecoy, ch);
    CHECK(r.rate == 0.0);
    CHECK(!r.feasible);

    ProtocolConfig t12 = t12_base(EstimationMethod::TS);
    t12.nu2 = t12.nu;
    r = rate_t12(t12, ch);
    CHECK(r.rate == 0.0);
    CHECK(!r.feasible);
}

TEST_CASE("swapped intensities need the explicit opt-in") {
    ChannelParams ch = honest();
    ProtocolConfig ray = base(ProtocolKind::UcRaymond);
    ray.mu = 0.1;
    ray.nu = 0.5;
    RateResult off = rate_uc_raymond(ray, ch);
    CHECK(off.rate == 0.0);
    CHECK(!off.feasible);
    ray.allow_swapped_intensities = true;
    RateResult on = rate_uc_raymond(ray, ch);
    CHECK(on.feasible);
    CHECK(on.rate == doctest::Approx(9.179665019892983e-05).epsilon(1e-12));
    // The combined protocol keeps the stricter ordering regardless.
    ProtocolConfig both = base(ProtocolKind::UcBoth);
    both.mu = 0.1;
    both.nu = 0.5;
    both.allow_swapped_intensities = true;
    CHECK(!rate_uc_both(both, ch).feasible);
}

TEST_CASE("config kind gating") {
    ChannelParams ch = honest();
    ProtocolConfig wei = base(ProtocolKind::UcWei);
    CHECK_THROWS_AS(rate_uc_raymond(wei, ch), std::invalid_argument);
    CHECK_THROWS_AS(rate_uc_both(wei, ch), std::invalid_argument);
    CHECK_THROWS_AS(rate_t12(wei, ch), std::invalid_argument);
    ProtocolConfig t12 = t12_base(EstimationMethod::TS);
    CHECK_THROWS_AS(rate_uc_wei(t12, ch), std::invalid_argument);
    t12.population = PopulationMode::Sent;
    CHECK_THROWS_AS(rate_t12(t12, ch), std::invalid_argument);
}

TEST_CASE("combined estimation takes the better method pointwise") {
    for (double t : {5.0, 10.0, 20.0}) {
        ChannelParams ch;
        ch.loss_db = t;
        double ts = rate_t12(t12_base(EstimationMethod::TS), ch).rate;
        double td = rate_t12(t12_base(EstimationMethod::TD), ch).rate;
        double combined =
            rate_t12(t12_base(EstimationMethod::Combined), ch).rate;
        CHECK(combined == std::max(ts, td));
    }
}

TEST_CASE("audit fields on a feasible evaluation") {
    ChannelParams ch = honest();
    ProtocolConfig wei = base(ProtocolKind::UcWei);
    RateResult r = rate_uc_wei(wei, ch);
    CHECK(r.feasible);
    CHECK(!r.collapsed);
    CHECK(r.Q_mu == doctest::Approx(gain(ch, 0.5)).epsilon(1e-12));
    CHECK(r.E_mu == doctest::Approx(qber(ch, 0.5)).epsilon(1e-12));
    CHECK(r.leak_ec ==
          doctest::Approx(1.16 * binary_entropy(r.E_mu)).epsilon(1e-12));
    CHECK(r.n_sift > 0.0);
    CHECK(r.theta > 0.0);
    CHECK(r.e_ph > r.e1_U);
    CHECK(r.ev_bits >= 1.0);
    CHECK(r.pa_bits >= 1.0);
    CHECK(r.Y1_L > 0.0);
    CHECK(r.Q1_L > 0.0);

    ProtocolConfig ray = base(ProtocolKind::UcRaymond);
    RateResult rr = rate_uc_raymond(ray, ch);
    CHECK(rr.theta == 0.0);
    CHECK(rr.delta_mu > 0.0);
}

TEST_CASE("finite correction delta") {
    double share = 1.6666666666666667e-11;
    CHECK(finite_correction_delta(1e10, share, share) ==
          doctest::Approx(0.0004246726679281022).epsilon(1e-12));
    CHECK_THROWS_AS(finite_correction_delta(0.0, 0.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(finite_correction_delta(1e9, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(finite_correction_delta(1e9, 0.5, 1.0), std::domain_error);
}

TEST_CASE("protocol family defaults") {
    CHECK(resolved_n_pe(base(ProtocolKind::UcWei)) == 4);
    CHECK(resolved_n_pe(t12_base(EstimationMethod::TS)) == 4);
    CHECK(resolved_n_pe(base(ProtocolKind::UcRaymond)) == 2);
    CHECK(resolved_n_pe(base(ProtocolKind::UcBoth)) == 2);
    ProtocolConfig c = base(ProtocolKind::UcWei);
    c.n_pe = 7;
    CHECK(resolved_n_pe(c) == 7);
    CHECK(family_of(ProtocolKind::UcWei) == SecurityFamily::Gllp);
    CHECK(family_of(ProtocolKind::UcRaymond) == SecurityFamily::SmoothEntropy);
    CHECK(family_of(ProtocolKind::UcBoth) == SecurityFamily::SmoothEntropy);
    CHECK(family_of(ProtocolKind::T12) == SecurityFamily::SmoothEntropy);
}

TEST_CASE("protocol-level expected pools") {
    ChannelParams ch = honest();
    ProtocolConfig wei = base(ProtocolKind::UcWei);
    SampleCounts sc = expected_counts(wei, ch);
    REQUIRE(sc.per_intensity.size() == 3);
    CHECK(sc.mode == PopulationMode::Sent);
    CHECK(sc.per_intensity[0].sent == doctest::Approx(6e11).epsilon(1e-12));
    CHECK(sc.per_intensity[2].sent == doctest::Approx(1e11).epsilon(1e-12));
    CHECK(sc.per_intensity[0].sifted_z ==
          doctest::Approx(6e11 * 0.81).epsilon(1e-12));

    ProtocolConfig t12 = t12_base(EstimationMethod::TS);
    SampleCounts tc = expected_counts(t12, ch);
    CHECK(tc.mode == PopulationMode::Received);
    CHECK(tc.per_intensity[2].sifted_z ==
          doctest::Approx(1e12 * 0.05 * 0.81 * gain(ch, 0.01)).epsilon(1e-12));
}
