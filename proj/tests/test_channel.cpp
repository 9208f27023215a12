#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "decoyrate/channel.hpp"

using namespace decoyrate;

namespace {
ChannelParams at_loss(double t_db) {
    ChannelParams ch;
    ch.loss_db = t_db;
    return ch;
}
} // namespace

TEST_CASE("distance and transmittance") {
    ChannelParams ch = ChannelParams::at_distance(50.0);
    CHECK(ch.loss_db == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(transmittance(ch) == doctest::Approx(0.0045).epsilon(1e-12));
    CHECK(transmittance(at_loss(0.0)) == doctest::Approx(0.045).epsilon(1e-15));
}

TEST_CASE("n-photon yields") {
    ChannelParams ch = at_loss(10.0);
    // Y0 dominates the 0-photon yield; the formula's 1 - (1-eta)^0 term
    // cancels with ~1e-10 relative noise, hence the loose tolerance.
    CHECK(yield_i(ch, 0) == doctest::Approx(1.7e-6).epsilon(1e-6));
    CHECK(yield_i(ch, 2) ==
          doctest::Approx(0.008981449999999946).epsilon(1e-12));
    CHECK(yield_i(ch, 1) < yield_i(ch, 2));
    for (int i = 0; i < 2000; ++i) CHECK(yield_i(at_loss(0.0), i) <= 1.0);
    CHECK_THROWS_AS(yield_i(ch, -1), std::domain_error);
}

TEST_CASE("gain, error gain, qber closed forms") {
    ChannelParams ch = at_loss(10.0);
    CHECK(gain(ch, 0.5) == doctest::Approx(0.00224917064737018).epsilon(1e-12));
    CHECK(error_gain(ch, 0.5) ==
          doctest::Approx(7.501653136321249e-05).epsilon(1e-12));
    CHECK(qber(ch, 0.5) ==
          doctest::Approx(0.033352974551275075).epsilon(1e-12));
    // Vacuum pulses see only dark counts, which are random bits.
    CHECK(qber(ch, 1e-9) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(gain(ch, 0.0) == doctest::Approx(1.7e-6).epsilon(1e-6));
    CHECK_THROWS_AS(gain(ch, -0.1), std::domain_error);
}

TEST_CASE("gain monotone in intensity, qber approaches detector error") {
    ChannelParams ch = at_loss(10.0);
    double prev = 0.0;
    for (double mu = 0.05; mu <= 1.0; mu += 0.05) {
        double q = gain(ch, mu);
        CHECK(q > prev);
        prev = q;
    }
    // With many photons nearly every click is a real detection.
    CHECK(qber(ch, 50.0) ==
          doctest::Approx(ch.detector_error).epsilon(1e-2));
}

TEST_CASE("qber needs a positive gain") {
    ChannelParams dead = at_loss(10.0);
    dead.dark_count_yield = 0.0;
    CHECK_THROWS_AS(qber(dead, 0.0), std::domain_error);
}

TEST_CASE("intensity stats bundle") {
    ChannelParams ch = at_loss(10.0);
    IntensityStats s = intensity_stats(ch, 0.5);
    CHECK(s.mu == 0.5);
    CHECK(s.Q == gain(ch, 0.5));
    CHECK(s.E == qber(ch, 0.5));
}

TEST_CASE("parameter validation") {
    ChannelParams ch;
    CHECK_NOTHROW(validate(ch));
    ch.vacuum_error = 0.4;
    CHECK_THROWS_AS(validate(ch), std::invalid_argument);
    ch = ChannelParams{};
    ch.dark_count_yield = -1e-9;
    CHECK_THROWS_AS(validate(ch), std::invalid_argument);
    ch = ChannelParams{};
    ch.detector_efficiency = 1.5;
    CHECK_THROWS_AS(validate(ch), std::invalid_argument);
    ch = ChannelParams{};
    ch.loss_db = -1.0;
    CHECK_THROWS_AS(validate(ch), std::invalid_argument);
}
