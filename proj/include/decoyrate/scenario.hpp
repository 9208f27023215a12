#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decoyrate/channel.hpp"
#include "decoyrate/optimizer.hpp"
#include "decoyrate/protocols.hpp"

namespace decoyrate {

// Configuration failure: syntax errors carry the 1-based line number,
// semantic errors name the violated constraint.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
    ConfigError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

// A protocol parameter that is either pinned or left to the optimizer over a
// closed interval. Config syntax: "0.5" pins, "0.05:0.95" frees.
struct ValueSpec {
    bool free = false;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;

    static ValueSpec fixed(double v) {
        ValueSpec s;
        s.value = s.lo = s.hi = v;
        return s;
    }
    static ValueSpec range(double lo, double hi) {
        ValueSpec s;
        s.free = true;
        s.lo = lo;
        s.hi = hi;
        s.value = lo;
        return s;
    }
};

enum class ScenarioKind { Curves, Table1, Table2, Table3 };

// One comparison arm. Labels come from the [protocol.<label>] section name
// and key the output rows.
struct ProtocolSpec {
    std::string label;
    ProtocolKind kind = ProtocolKind::UcWei;
    EstimationMethod estimation = EstimationMethod::TS;
    ValueSpec mu = ValueSpec::fixed(0.5);
    ValueSpec nu = ValueSpec::fixed(0.1);
    ValueSpec nu2 = ValueSpec::fixed(0.01);
    ValueSpec q_z = ValueSpec::fixed(0.9);
    ValueSpec p_mu = ValueSpec::fixed(0.5);
    ValueSpec p_nu = ValueSpec::fixed(0.3);
    std::optional<double> p_0; // consistency check only; remainder otherwise
    double f_ec = 1.16;
    int sifting_exponent = 2;
    FluctuationModel::Kind fluctuation = FluctuationModel::Kind::StandardError;
    PopulationMode population = PopulationMode::Sent;
    int n_pe = 0; // 0 = family default
    bool allow_mu_below_nu = false;
};

struct Scenario {
    std::string name;
    ScenarioKind kind = ScenarioKind::Curves;
    ChannelParams channel; // loss_db ignored; the axis below supplies it
    std::vector<double> loss_db;
    std::vector<double> distance_km; // alternative axis, loss = alpha * d
    bool axis_is_distance = false;
    std::vector<double> n_pulses;
    std::vector<double> zeta;
    bool include_asymptotic = false;
    std::vector<ProtocolSpec> protocols;
    OptimizerSettings optimizer;
    bool plot_data = false;
    double clock_rate_hz = 1e9; // converts per-pulse rate to bit/s in tables
};

// Parses the sectioned `key = value` format (sections [scenario], [channel],
// [protocol.<label>], [optimizer], [output]; `#`/`;` comments). Unknown
// sections and keys are hard errors. default_name fills in a missing
// [scenario] name. Throws ConfigError.
Scenario parse_config(const std::string& text,
                      const std::string& default_name = "scenario");

// Emits a config with every resolved value spelled out, suitable as a run
// manifest: parse_config(serialize_scenario(s)) reproduces s exactly.
std::string serialize_scenario(const Scenario& s);

// Builtin scenario presets, resolvable by name without a file.
const std::vector<std::string>& builtin_scenario_names();
bool is_builtin_scenario(const std::string& name);
std::string builtin_config(const std::string& name); // throws ConfigError
Scenario builtin_scenario(const std::string& name);  // throws ConfigError

} // namespace decoyrate
