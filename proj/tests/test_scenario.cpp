#include <doctest.h>

#include <string>
#include <vector>

#include "decoyrate/scenario.hpp"
#include "decoyrate/simulator.hpp"

using namespace decoyrate;

namespace {

const char* kMinimal = R"(
[scenario]
loss_db = 10
n_pulses = 1e12
zeta = 1e-10

[protocol.base]
kind = uc-wei
)";

// Parse failure message, or empty string when the text parses.
std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

bool mentions(const std::string& msg, const std::string& needle) {
    return msg.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("minimal config and defaults") {
    Scenario s = parse_config(kMinimal, "fallback");
    CHECK(s.name == "fallback");
    CHECK(s.kind == ScenarioKind::Curves);
    CHECK(s.loss_db == std::vector<double>{10.0});
    CHECK(!s.axis_is_distance);
    CHECK(s.n_pulses == std::vector<double>{1e12});
    CHECK(s.zeta == std::vector<double>{1e-10});
    CHECK(!s.include_asymptotic);
    CHECK(!s.plot_data);
    CHECK(s.clock_rate_hz == 1e9);
    CHECK(s.optimizer.grid_points == 12);
    CHECK(s.optimizer.refinement_rounds == 3);
    REQUIRE(s.protocols.size() == 1);
    const ProtocolSpec& p = s.protocols[0];
    CHECK(p.label == "base");
    CHECK(p.kind == ProtocolKind::UcWei);
    CHECK(!p.mu.free);
    CHECK(p.mu.value == 0.5);
    CHECK(p.f_ec == 1.16);
    CHECK(p.sifting_exponent == 2);
    CHECK(p.fluctuation == FluctuationModel::Kind::StandardError);
    CHECK(p.population == PopulationMode::Sent);
    CHECK(p.n_pe == 0);
}

TEST_CASE("axis and value grammar") {
    std::string text = R"(
[scenario]
loss_db = 0:30:10
n_pulses = 6e9,1e12
zeta = 1e-10,2.5e-3

[protocol.a]
kind = uc-wei
mu = 0.05:0.95
nu = 0.25
)";
    Scenario s = parse_config(text);
    CHECK(s.loss_db == std::vector<double>{0.0, 10.0, 20.0, 30.0});
    CHECK(s.n_pulses == std::vector<double>{6e9, 1e12});
    CHECK(s.zeta == std::vector<double>{1e-10, 2.5e-3});
    CHECK(s.protocols[0].mu.free);
    CHECK(s.protocols[0].mu.lo == 0.05);
    CHECK(s.protocols[0].mu.hi == 0.95);
    CHECK(s.protocols[0].mu.value == 0.05);
    CHECK(!s.protocols[0].nu.free);
    CHECK(s.protocols[0].nu.value == 0.25);

    std::string distance = R"(
[scenario]
distance_km = 0:100:50
n_pulses = 1e12
zeta = 1e-10

[protocol.a]
kind = uc-wei
)";
    Scenario d = parse_config(distance);
    CHECK(d.axis_is_distance);
    CHECK(d.distance_km == std::vector<double>{0.0, 50.0, 100.0});
}

TEST_CASE("syntax errors carry line numbers") {
    std::string msg = error_of("[scenario]\nbogus_key = 1\n");
    CHECK(mentions(msg, "line 2"));
    CHECK(mentions(msg, "bogus_key"));

    msg = error_of("[scenario\n");
    CHECK(mentions(msg, "line 1"));
    CHECK(mentions(msg, "unterminated"));

    msg = error_of("[nonsense]\nx = 1\n");
    CHECK(mentions(msg, "line 1"));
    CHECK(mentions(msg, "unknown section"));

    msg = error_of("loss_db = 1\n");
    CHECK(mentions(msg, "line 1"));
    CHECK(mentions(msg, "outside"));

    msg = error_of("[scenario]\nloss_db = 1\nloss_db = 2\n");
    CHECK(mentions(msg, "line 3"));
    CHECK(mentions(msg, "duplicate key"));

    msg = error_of("[scenario]\n[scenario]\n");
    CHECK(mentions(msg, "line 2"));
    CHECK(mentions(msg, "duplicate section"));

    msg = error_of("[protocol.a]\nkind = uc-wei\n[protocol.a]\n");
    CHECK(mentions(msg, "line 3"));
    CHECK(mentions(msg, "duplicate protocol"));

    msg = error_of("[scenario]\nloss_db =\n");
    CHECK(mentions(msg, "line 2"));
    CHECK(mentions(msg, "missing value"));

    msg = error_of("[scenario]\nloss_db = banana\n");
    CHECK(mentions(msg, "line 2"));

    msg = error_of("[scenario]\nloss_db = 0:30\n");
    CHECK(mentions(msg, "line 2"));

    msg = error_of(std::string(kMinimal) + "[protocol.b]\nkind = sm05\n");
    CHECK(mentions(msg, "kind"));
}

TEST_CASE("semantic validation") {
    // Missing or doubled channel axes.
    CHECK(mentions(error_of("[scenario]\nn_pulses = 1e12\nzeta = 1e-10\n"
                            "[protocol.a]\nkind = uc-wei\n"),
                   "exactly one channel axis"));
    CHECK(mentions(error_of("[scenario]\nloss_db = 1\ndistance_km = 5\n"
                            "n_pulses = 1e12\nzeta = 1e-10\n"
                            "[protocol.a]\nkind = uc-wei\n"),
                   "exactly one channel axis"));
    // zeta range.
    CHECK(mentions(error_of("[scenario]\nloss_db = 1\nn_pulses = 1e12\n"
                            "zeta = 1.5\n[protocol.a]\nkind = uc-wei\n"),
                   "zeta"));
    // A protocol section is mandatory.
    CHECK(mentions(error_of("[scenario]\nloss_db = 1\nn_pulses = 1e12\n"
                            "zeta = 1e-10\n"),
                   "protocol"));
}

TEST_CASE("protocol cross-field rules") {
    auto with_proto = [](const std::string& body) {
        return "[scenario]\nloss_db = 10\nn_pulses = 1e12\nzeta = 1e-10\n"
               "[protocol.p]\n" +
               body;
    };
    // Fixed intensities must be ordered for the GLLP-style estimator.
    CHECK(mentions(error_of(with_proto("kind = uc-wei\nmu = 0.1\nnu = 0.3\n")),
                   "requires mu > nu"));
    // The swapped-intensity switch exists only on uc-raymond.
    CHECK(mentions(
        error_of(with_proto("kind = uc-wei\nallow_mu_below_nu = true\n")),
        "allow_mu_below_nu"));
    CHECK(error_of(with_proto("kind = uc-raymond\nmu = 0.1\nnu = 0.3\n"
                              "allow_mu_below_nu = true\n"))
              .empty());
    // estimation / nu2 belong to the two-decoy protocol.
    CHECK(mentions(error_of(with_proto("kind = uc-wei\nestimation = ts\n")),
                   "estimation"));
    CHECK(mentions(error_of(with_proto("kind = uc-wei\nnu2 = 0.01\n")), "nu2"));
    // The two-decoy protocol collects statistics on received pulses.
    CHECK(mentions(error_of(with_proto("kind = t12\npopulation = sent\n")),
                   "received"));
    CHECK(error_of(with_proto("kind = t12\npopulation = received\n")).empty());
    // Explicit vacuum probability has to complete the simplex.
    CHECK(mentions(error_of(with_proto(
                       "kind = uc-wei\np_mu = 0.5\np_nu = 0.4\np_0 = 0.2\n")),
                   "sum"));
    CHECK(error_of(with_proto(
                       "kind = uc-wei\np_mu = 0.5\np_nu = 0.4\np_0 = 0.1\n"))
              .empty());
    CHECK(mentions(error_of(with_proto("kind = uc-wei\nsifting_exponent = 3\n")),
                   "sifting_exponent"));
    CHECK(mentions(error_of(with_proto("kind = uc-wei\nf_ec = 0.9\n")), "f_ec"));
}

TEST_CASE("builtin catalog") {
    auto names = builtin_scenario_names();
    REQUIRE(names.size() == 8);
    for (const char* expect : {"fig1", "fig2", "fig3", "fig4", "fig5", "table1",
                               "table2", "table3"}) {
        CHECK(is_builtin_scenario(expect));
        bool found = false;
        for (const auto& n : names) found = found || n == expect;
        CHECK(found);
    }
    CHECK(!is_builtin_scenario("fig9"));

    Scenario fig1 = builtin_scenario("fig1");
    CHECK(fig1.kind == ScenarioKind::Curves);
    CHECK(fig1.loss_db.size() == 31);
    CHECK(fig1.n_pulses.size() == 3);
    CHECK(fig1.zeta.size() == 2);
    CHECK(fig1.protocols.size() == 1);
    CHECK(fig1.protocols[0].mu.free);

    CHECK(builtin_scenario("fig2").include_asymptotic);
    CHECK(builtin_scenario("fig3").protocols.size() == 2);
    CHECK(builtin_scenario("fig3").protocols[0].sifting_exponent == 1);
    CHECK(builtin_scenario("fig4").protocols[1].kind == ProtocolKind::UcBoth);

    Scenario fig5 = builtin_scenario("fig5");
    CHECK(fig5.axis_is_distance);
    CHECK(fig5.distance_km.size() == 25);
    CHECK(fig5.protocols.size() == 3);
    for (const auto& p : fig5.protocols) {
        CHECK(p.kind == ProtocolKind::T12);
        CHECK(p.population == PopulationMode::Received);
    }

    CHECK(builtin_scenario("table1").kind == ScenarioKind::Table1);
    CHECK(builtin_scenario("table2").kind == ScenarioKind::Table2);
    CHECK(builtin_scenario("table2").loss_db ==
          std::vector<double>{5.0, 10.0, 15.0, 20.0});
    Scenario t3 = builtin_scenario("table3");
    CHECK(t3.kind == ScenarioKind::Table3);
    CHECK(t3.distance_km == std::vector<double>{35.0, 50.0, 65.0, 80.0});
    CHECK_THROWS_AS(builtin_scenario("fig9"), ConfigError);
}

TEST_CASE("serialization round trip is a fixed point") {
    for (const auto& name : builtin_scenario_names()) {
        CAPTURE(name);
        Scenario s = builtin_scenario(name);
        std::string once = serialize_scenario(s);
        Scenario back = parse_config(once, "ignored");
        CHECK(back.name == s.name);
        CHECK(serialize_scenario(back) == once);
    }
    Scenario minimal = parse_config(kMinimal, "m");
    std::string once = serialize_scenario(minimal);
    CHECK(serialize_scenario(parse_config(once, "x")) == once);
}

TEST_CASE("manifests pin the sampling generator") {
    Scenario s = parse_config(kMinimal, "m");
    std::string text = serialize_scenario(s);
    CHECK(mentions(text, std::string("generator = ") + kGeneratorId));
    std::string tampered = text;
    auto pos = tampered.find(kGeneratorId);
    tampered.replace(pos, std::string(kGeneratorId).size(), "xorshift128/v9");
    CHECK(mentions(error_of(tampered), "generator"));
}
