#include "decoyrate/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "decoyrate/format.hpp"
#include "decoyrate/simulator.hpp"

namespace decoyrate {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(trim(s.substr(start)));
            return parts;
        }
        parts.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
}

double parse_number(const std::string& s, int line, const std::string& key) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        throw ConfigError(line, key + ": '" + s + "' is not a number");
    return v;
}

long parse_integer(const std::string& s, int line, const std::string& key) {
    const char* begin = s.c_str();
    char* end = nullptr;
    long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw ConfigError(line, key + ": '" + s + "' is not an integer");
    return v;
}

bool parse_bool(const std::string& s, int line, const std::string& key) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw ConfigError(line, key + ": expected true or false, got '" + s + "'");
}

std::vector<double> parse_list(const std::string& s, int line,
                               const std::string& key) {
    std::vector<double> out;
    for (const auto& item : split(s, ','))
        out.push_back(parse_number(item, line, key));
    return out;
}

// Axis values: either "lo:hi:step" or a comma list.
std::vector<double> parse_axis(const std::string& s, int line,
                               const std::string& key) {
    auto parts = split(s, ':');
    if (parts.size() == 1) return parse_list(s, line, key);
    if (parts.size() != 3)
        throw ConfigError(line, key + ": expected lo:hi:step or a comma list");
    double lo = parse_number(parts[0], line, key);
    double hi = parse_number(parts[1], line, key);
    double step = parse_number(parts[2], line, key);
    if (!(step > 0.0) || hi < lo)
        throw ConfigError(line, key + ": range needs hi >= lo and step > 0");
    int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = lo + i * step;
    return out;
}

// Protocol parameters: "v" pins, "lo:hi" frees.
ValueSpec parse_value_spec(const std::string& s, int line,
                           const std::string& key) {
    auto parts = split(s, ':');
    if (parts.size() == 1)
        return ValueSpec::fixed(parse_number(s, line, key));
    if (parts.size() != 2)
        throw ConfigError(line, key + ": expected a value or lo:hi");
    double lo = parse_number(parts[0], line, key);
    double hi = parse_number(parts[1], line, key);
    if (hi < lo) throw ConfigError(line, key + ": interval needs hi >= lo");
    return ValueSpec::range(lo, hi);
}

ProtocolKind parse_protocol_kind(const std::string& s, int line) {
    if (s == "uc-wei") return ProtocolKind::UcWei;
    if (s == "uc-raymond") return ProtocolKind::UcRaymond;
    if (s == "uc-both") return ProtocolKind::UcBoth;
    if (s == "t12") return ProtocolKind::T12;
    throw ConfigError(line, "kind: expected uc-wei, uc-raymond, uc-both or t12");
}

ScenarioKind parse_scenario_kind(const std::string& s, int line) {
    if (s == "curves") return ScenarioKind::Curves;
    if (s == "table1") return ScenarioKind::Table1;
    if (s == "table2") return ScenarioKind::Table2;
    if (s == "table3") return ScenarioKind::Table3;
    throw ConfigError(line, "kind: expected curves, table1, table2 or table3");
}

EstimationMethod parse_estimation(const std::string& s, int line) {
    if (s == "ts") return EstimationMethod::TS;
    if (s == "td") return EstimationMethod::TD;
    if (s == "combined") return EstimationMethod::Combined;
    throw ConfigError(line, "estimation: expected ts, td or combined");
}

FluctuationModel::Kind parse_fluctuation(const std::string& s, int line) {
    if (s == "none") return FluctuationModel::Kind::None;
    if (s == "standard-error") return FluctuationModel::Kind::StandardError;
    if (s == "hoeffding") return FluctuationModel::Kind::Hoeffding;
    throw ConfigError(line,
                      "fluctuation: expected none, standard-error or hoeffding");
}

PopulationMode parse_population(const std::string& s, int line) {
    if (s == "sent") return PopulationMode::Sent;
    if (s == "received") return PopulationMode::Received;
    throw ConfigError(line, "population: expected sent or received");
}

const char* protocol_kind_name(ProtocolKind k) {
    switch (k) {
        case ProtocolKind::UcWei: return "uc-wei";
        case ProtocolKind::UcRaymond: return "uc-raymond";
        case ProtocolKind::UcBoth: return "uc-both";
        case ProtocolKind::T12: return "t12";
    }
    return "?";
}

const char* scenario_kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::Curves: return "curves";
        case ScenarioKind::Table1: return "table1";
        case ScenarioKind::Table2: return "table2";
        case ScenarioKind::Table3: return "table3";
    }
    return "?";
}

const char* estimation_name(EstimationMethod m) {
    switch (m) {
        case EstimationMethod::TS: return "ts";
        case EstimationMethod::TD: return "td";
        case EstimationMethod::Combined: return "combined";
    }
    return "?";
}

const char* fluctuation_name(FluctuationModel::Kind k) {
    switch (k) {
        case FluctuationModel::Kind::None: return "none";
        case FluctuationModel::Kind::StandardError: return "standard-error";
        case FluctuationModel::Kind::Hoeffding: return "hoeffding";
    }
    return "?";
}

// Extra per-protocol parse state used for the semantic checks below.
struct ProtoFlags {
    bool estimation_set = false;
    bool nu2_set = false;
    bool allow_set = false;
};

void check_unit_interval(const ValueSpec& v, const std::string& where) {
    double lo = v.free ? v.lo : v.value;
    double hi = v.free ? v.hi : v.value;
    if (!(lo > 0.0) || !(hi < 1.0))
        throw ConfigError(where + " must lie strictly inside (0, 1)");
}

void check_nonnegative(const ValueSpec& v, const std::string& where) {
    double lo = v.free ? v.lo : v.value;
    if (lo < 0.0) throw ConfigError(where + " must be nonnegative");
}

void validate_protocol(const ProtocolSpec& p, const ProtoFlags& f) {
    const std::string at = "protocol '" + p.label + "': ";
    check_nonnegative(p.mu, at + "mu");
    check_nonnegative(p.nu, at + "nu");
    check_unit_interval(p.q_z, at + "q_z");
    check_unit_interval(p.p_mu, at + "p_mu");
    check_unit_interval(p.p_nu, at + "p_nu");
    if (p.f_ec < 1.0) throw ConfigError(at + "f_ec must be >= 1");
    if (p.sifting_exponent != 1 && p.sifting_exponent != 2)
        throw ConfigError(at + "sifting_exponent must be 1 or 2");
    if (p.n_pe < 0) throw ConfigError(at + "n_pe must be >= 0");

    if (p.p_0.has_value()) {
        if (p.p_mu.free || p.p_nu.free)
            throw ConfigError(at + "p_0 requires fixed p_mu and p_nu");
        double sum = p.p_mu.value + p.p_nu.value + *p.p_0;
        if (*p.p_0 < 0.0 || std::fabs(sum - 1.0) > 1e-9)
            throw ConfigError(at + "p_mu + p_nu + p_0 must sum to 1");
    } else if (!p.p_mu.free && !p.p_nu.free &&
               p.p_mu.value + p.p_nu.value > 1.0 + 1e-12) {
        throw ConfigError(at + "p_mu + p_nu must not exceed 1");
    }

    const bool fixed_order_known = !p.mu.free && !p.nu.free;
    switch (p.kind) {
        case ProtocolKind::UcWei:
        case ProtocolKind::UcBoth:
            if (fixed_order_known && p.mu.value <= p.nu.value)
                throw ConfigError(at + "requires mu > nu");
            break;
        case ProtocolKind::UcRaymond:
            if (fixed_order_known && p.mu.value == p.nu.value)
                throw ConfigError(at + "mu and nu must differ");
            if (fixed_order_known && p.mu.value < p.nu.value &&
                !p.allow_mu_below_nu)
                throw ConfigError(at +
                                  "mu < nu needs allow_mu_below_nu = true");
            break;
        case ProtocolKind::T12:
            if (p.population != PopulationMode::Received)
                throw ConfigError(
                    at + "t12 statistics are collected on received counts; "
                         "set population = received");
            if (fixed_order_known && p.mu.value <= p.nu.value)
                throw ConfigError(at + "requires mu > nu");
            if (!p.nu2.free && !(p.nu2.value > 0.0))
                throw ConfigError(at + "nu2 must be positive");
            if (p.nu2.free && !(p.nu2.lo > 0.0))
                throw ConfigError(at + "nu2 must be positive");
            if (!p.nu.free && !p.nu2.free && p.nu2.value >= p.nu.value)
                throw ConfigError(at + "requires nu > nu2");
            break;
    }
    if (p.kind != ProtocolKind::T12) {
        if (f.estimation_set)
            throw ConfigError(at + "estimation applies to t12 protocols only");
        if (f.nu2_set)
            throw ConfigError(at + "nu2 applies to t12 protocols only");
    }
    if (p.kind != ProtocolKind::UcRaymond && f.allow_set)
        throw ConfigError(at +
                          "allow_mu_below_nu applies to uc-raymond only");
}

void validate_scenario(const Scenario& s, const std::vector<ProtoFlags>& flags) {
    if (s.loss_db.empty() == s.distance_km.empty())
        throw ConfigError(
            "scenario needs exactly one channel axis: loss_db or distance_km");
    for (double v : s.loss_db)
        if (v < 0.0) throw ConfigError("loss_db values must be nonnegative");
    for (double v : s.distance_km)
        if (v < 0.0) throw ConfigError("distance_km values must be nonnegative");
    if (s.n_pulses.empty())
        throw ConfigError("n_pulses must be a nonempty list");
    for (double n : s.n_pulses)
        if (!(n > 0.0)) throw ConfigError("n_pulses values must be positive");
    if (s.zeta.empty()) throw ConfigError("zeta must be a nonempty list");
    for (double z : s.zeta)
        if (!(z > 0.0) || !(z < 1.0))
            throw ConfigError("zeta values must lie in (0, 1)");
    if (s.protocols.empty())
        throw ConfigError("at least one [protocol.<name>] section is required");
    if (s.kind == ScenarioKind::Table2 && s.protocols.size() < 2)
        throw ConfigError("table2 needs at least two protocol arms");
    try {
        validate(s.channel);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (s.optimizer.grid_points < 2)
        throw ConfigError("optimizer grid_points must be >= 2");
    if (s.optimizer.refinement_rounds < 0)
        throw ConfigError("optimizer refinement_rounds must be >= 0");
    if (!(s.optimizer.tolerance > 0.0))
        throw ConfigError("optimizer tolerance must be positive");
    if (!(s.clock_rate_hz > 0.0))
        throw ConfigError("clock_rate_hz must be positive");
    for (std::size_t i = 0; i < s.protocols.size(); ++i)
        validate_protocol(s.protocols[i], flags[i]);
}

} // namespace

Scenario parse_config(const std::string& text, const std::string& default_name) {
    Scenario s;
    std::vector<ProtoFlags> flags;
    std::string section;
    int proto_idx = -1;
    std::set<std::string> seen_sections;
    std::set<std::string> seen_keys;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        std::size_t cpos = line.find_first_of("#;");
        if (cpos != std::string::npos) line.erase(cpos);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(line_no, "unterminated section header");
            std::string name = trim(line.substr(1, line.size() - 2));
            seen_keys.clear();
            proto_idx = -1;
            if (name == "scenario" || name == "channel" ||
                name == "optimizer" || name == "output") {
                if (!seen_sections.insert(name).second)
                    throw ConfigError(line_no, "duplicate section [" + name + "]");
                section = name;
            } else if (name.rfind("protocol.", 0) == 0) {
                std::string label = trim(name.substr(9));
                if (label.empty())
                    throw ConfigError(line_no, "protocol section needs a label");
                for (const auto& p : s.protocols)
                    if (p.label == label)
                        throw ConfigError(line_no,
                                          "duplicate protocol '" + label + "'");
                ProtocolSpec p;
                p.label = label;
                s.protocols.push_back(p);
                flags.push_back({});
                proto_idx = static_cast<int>(s.protocols.size()) - 1;
                section = "protocol";
            } else {
                throw ConfigError(line_no, "unknown section [" + name + "]");
            }
            continue;
        }

        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "missing key");
        if (val.empty()) throw ConfigError(line_no, key + ": missing value");
        if (section.empty())
            throw ConfigError(line_no, "key outside any section");
        if (!seen_keys.insert(key).second)
            throw ConfigError(line_no, "duplicate key '" + key + "'");

        if (section == "scenario") {
            if (key == "name") s.name = val;
            else if (key == "kind") s.kind = parse_scenario_kind(val, line_no);
            else if (key == "loss_db") s.loss_db = parse_axis(val, line_no, key);
            else if (key == "distance_km") {
                s.distance_km = parse_axis(val, line_no, key);
                s.axis_is_distance = true;
            } else if (key == "n_pulses") s.n_pulses = parse_list(val, line_no, key);
            else if (key == "zeta") s.zeta = parse_list(val, line_no, key);
            else if (key == "include_asymptotic")
                s.include_asymptotic = parse_bool(val, line_no, key);
            else throw ConfigError(line_no, "unknown key '" + key + "' in [scenario]");
        } else if (section == "channel") {
            if (key == "dark_count_yield")
                s.channel.dark_count_yield = parse_number(val, line_no, key);
            else if (key == "detector_efficiency")
                s.channel.detector_efficiency = parse_number(val, line_no, key);
            else if (key == "detector_error")
                s.channel.detector_error = parse_number(val, line_no, key);
            else if (key == "fiber_loss_db_per_km")
                s.channel.fiber_loss_db_per_km = parse_number(val, line_no, key);
            else throw ConfigError(line_no, "unknown key '" + key + "' in [channel]");
        } else if (section == "protocol") {
            ProtocolSpec& p = s.protocols[proto_idx];
            ProtoFlags& f = flags[proto_idx];
            if (key == "kind") p.kind = parse_protocol_kind(val, line_no);
            else if (key == "estimation") {
                p.estimation = parse_estimation(val, line_no);
                f.estimation_set = true;
            } else if (key == "mu") p.mu = parse_value_spec(val, line_no, key);
            else if (key == "nu") p.nu = parse_value_spec(val, line_no, key);
            else if (key == "nu2") {
                p.nu2 = parse_value_spec(val, line_no, key);
                f.nu2_set = true;
            } else if (key == "q_z") p.q_z = parse_value_spec(val, line_no, key);
            else if (key == "p_mu") p.p_mu = parse_value_spec(val, line_no, key);
            else if (key == "p_nu") p.p_nu = parse_value_spec(val, line_no, key);
            else if (key == "p_0") p.p_0 = parse_number(val, line_no, key);
            else if (key == "f_ec") p.f_ec = parse_number(val, line_no, key);
            else if (key == "sifting_exponent")
                p.sifting_exponent =
                    static_cast<int>(parse_integer(val, line_no, key));
            else if (key == "fluctuation")
                p.fluctuation = parse_fluctuation(val, line_no);
            else if (key == "population")
                p.population = parse_population(val, line_no);
            else if (key == "n_pe")
                p.n_pe = static_cast<int>(parse_integer(val, line_no, key));
            else if (key == "allow_mu_below_nu") {
                p.allow_mu_below_nu = parse_bool(val, line_no, key);
                f.allow_set = true;
            } else
                throw ConfigError(line_no, "unknown key '" + key +
                                               "' in [protocol." + p.label + "]");
        } else if (section == "optimizer") {
            if (key == "grid_points")
                s.optimizer.grid_points =
                    static_cast<int>(parse_integer(val, line_no, key));
            else if (key == "refinement_rounds")
                s.optimizer.refinement_rounds =
                    static_cast<int>(parse_integer(val, line_no, key));
            else if (key == "tolerance")
                s.optimizer.tolerance = parse_number(val, line_no, key);
            else throw ConfigError(line_no, "unknown key '" + key + "' in [optimizer]");
        } else { // output
            if (key == "plot_data") s.plot_data = parse_bool(val, line_no, key);
            else if (key == "clock_rate_hz")
                s.clock_rate_hz = parse_number(val, line_no, key);
            else if (key == "generator") {
                if (val != kGeneratorId)
                    throw ConfigError(line_no,
                                      "unsupported generator '" + val + "'");
            } else
                throw ConfigError(line_no, "unknown key '" + key + "' in [output]");
        }
    }

    if (s.name.empty()) s.name = default_name;
    validate_scenario(s, flags);
    return s;
}

std::string serialize_scenario(const Scenario& s) {
    std::string out;
    auto kv = [&out](const std::string& key, const std::string& val) {
        out += key;
        out += " = ";
        out += val;
        out += '\n';
    };
    auto list = [](const std::vector<double>& v) {
        std::string r;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) r += ',';
            r += format_double(v[i]);
        }
        return r;
    };
    auto spec = [](const ValueSpec& v) {
        return v.free ? format_double(v.lo) + ":" + format_double(v.hi)
                      : format_double(v.value);
    };

    out += "[scenario]\n";
    kv("name", s.name);
    kv("kind", scenario_kind_name(s.kind));
    if (s.axis_is_distance) kv("distance_km", list(s.distance_km));
    else kv("loss_db", list(s.loss_db));
    kv("n_pulses", list(s.n_pulses));
    kv("zeta", list(s.zeta));
    kv("include_asymptotic", s.include_asymptotic ? "true" : "false");

    out += "\n[channel]\n";
    kv("dark_count_yield", format_double(s.channel.dark_count_yield));
    kv("detector_efficiency", format_double(s.channel.detector_efficiency));
    kv("detector_error", format_double(s.channel.detector_error));
    kv("fiber_loss_db_per_km", format_double(s.channel.fiber_loss_db_per_km));

    for (const auto& p : s.protocols) {
        out += "\n[protocol." + p.label + "]\n";
        kv("kind", protocol_kind_name(p.kind));
        if (p.kind == ProtocolKind::T12) {
            kv("estimation", estimation_name(p.estimation));
            kv("nu2", spec(p.nu2));
        }
        kv("mu", spec(p.mu));
        kv("nu", spec(p.nu));
        kv("q_z", spec(p.q_z));
        kv("p_mu", spec(p.p_mu));
        kv("p_nu", spec(p.p_nu));
        kv("f_ec", format_double(p.f_ec));
        kv("sifting_exponent", std::to_string(p.sifting_exponent));
        kv("fluctuation", fluctuation_name(p.fluctuation));
        kv("population",
           p.population == PopulationMode::Sent ? "sent" : "received");
        kv("n_pe", std::to_string(p.n_pe));
        if (p.kind == ProtocolKind::UcRaymond)
            kv("allow_mu_below_nu", p.allow_mu_below_nu ? "true" : "false");
    }

    out += "\n[optimizer]\n";
    kv("grid_points", std::to_string(s.optimizer.grid_points));
    kv("refinement_rounds", std::to_string(s.optimizer.refinement_rounds));
    kv("tolerance", format_double(s.optimizer.tolerance));

    out += "\n[output]\n";
    kv("plot_data", s.plot_data ? "true" : "false");
    kv("clock_rate_hz", format_double(s.clock_rate_hz));
    kv("generator", kGeneratorId);
    return out;
}

namespace {

struct BuiltinEntry {
    const char* name;
    const char* text;
};

// Shared arm snippets keep the presets in sync where they intentionally agree.
const BuiltinEntry kBuiltins[] = {
    {"fig1", R"(# Finite-key rate vs loss for the GLLP-style protocol at three key
# lengths and two composable targets.
[scenario]
name = fig1
kind = curves
loss_db = 0:30:1
n_pulses = 6e9,1e12,1e15
zeta = 1e-10,2.5e-3

[protocol.uc-wei]
kind = uc-wei
mu = 0.05:0.95
nu = 0.1:0.4
q_z = 0.5:0.99
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = standard-error
population = sent
)"},
    {"fig2", R"(# Smooth-entropy rate vs loss at N = 1e13 for three targets, with the
# asymptotic ceiling overlaid. Fluctuation off isolates the finite
# corrections themselves.
[scenario]
name = fig2
kind = curves
loss_db = 0:30:1
n_pulses = 1e13
zeta = 1e-3,1e-5,1e-10
include_asymptotic = true

[protocol.uc-raymond]
kind = uc-raymond
mu = 0.05:0.95
nu = 0.1:0.4
q_z = 0.99
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = none
population = sent
)"},
    {"fig3", R"(# Fair comparison of the two security treatments under identical
# single-exponent sifting, basis bias, fluctuation handling and targets.
[scenario]
name = fig3
kind = curves
loss_db = 0:30:1
n_pulses = 6e9,1e12,1e15
zeta = 1e-10

[protocol.uc-wei]
kind = uc-wei
sifting_exponent = 1
mu = 0.05:0.95
nu = 0.1:0.4
q_z = 0.99
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = standard-error
population = sent

[protocol.uc-raymond]
kind = uc-raymond
sifting_exponent = 1
mu = 0.05:0.95
nu = 0.1:0.4
q_z = 0.99
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = standard-error
population = sent
)"},
    {"fig4", R"(# Keying both intensities versus signal-only, worst-case Hoeffding
# fluctuation on both arms.
[scenario]
name = fig4
kind = curves
loss_db = 0:30:1
n_pulses = 1e12,1e15
zeta = 1e-10

[protocol.uc-raymond]
kind = uc-raymond
mu = 0.05:0.95
nu = 0.1:0.4
q_z = 0.99
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = hoeffding
population = sent

[protocol.uc-both]
kind = uc-both
mu = 0.05:0.95
nu = 0.1:0.4
q_z = 0.99
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = hoeffding
population = sent
)"},
    {"fig5", R"(# Two-decoy protocol over distance: single-photon error estimated from
# the signal basis sample (ts), from the second decoy (td), and the
# pointwise better of the two.
[scenario]
name = fig5
kind = curves
distance_km = 0:120:5
n_pulses = 1e12,1e15
zeta = 1e-10

[protocol.t12-ts]
kind = t12
estimation = ts
nu2 = 0.01
mu = 0.05:0.95
nu = 0.02:0.4
q_z = 0.9
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = standard-error
population = received

[protocol.t12-td]
kind = t12
estimation = td
nu2 = 0.01
mu = 0.05:0.95
nu = 0.02:0.4
q_z = 0.9
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = standard-error
population = received

[protocol.t12-combined]
kind = t12
estimation = combined
nu2 = 0.01
mu = 0.05:0.95
nu = 0.02:0.4
q_z = 0.9
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = standard-error
population = received
)"},
    {"table1", R"(# Statistical-deviation ratios at the 25 dB working point: how much each
# estimated parameter and the final rate move when fluctuation is
# switched on.
[scenario]
name = table1
kind = table1
loss_db = 25
n_pulses = 1e15,6e9
zeta = 1e-10,2.5e-3

[protocol.uc-wei]
kind = uc-wei
mu = 0.05:0.95
nu = 0.1:0.4
q_z = 0.5:0.99
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = standard-error
population = sent
)"},
    {"table2", R"(# Rate-increase ratios of the smooth-entropy treatment over the
# GLLP-style one at four representative loss points.
[scenario]
name = table2
kind = table2
loss_db = 5,10,15,20
n_pulses = 6e9,1e12,1e15
zeta = 1e-10

[protocol.uc-wei]
kind = uc-wei
sifting_exponent = 1
mu = 0.05:0.95
nu = 0.1:0.4
q_z = 0.99
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = standard-error
population = sent

[protocol.uc-raymond]
kind = uc-raymond
sifting_exponent = 1
mu = 0.05:0.95
nu = 0.1:0.4
q_z = 0.99
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = standard-error
population = sent
)"},
    {"table3", R"(# Two-decoy throughput at four distances, converted to bit/s by the
# clock rate.
[scenario]
name = table3
kind = table3
distance_km = 35,50,65,80
n_pulses = 1e12,1e15
zeta = 1e-10

[protocol.t12-ts]
kind = t12
estimation = ts
nu2 = 0.01
mu = 0.05:0.95
nu = 0.02:0.4
q_z = 0.9
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = standard-error
population = received

[protocol.t12-td]
kind = t12
estimation = td
nu2 = 0.01
mu = 0.05:0.95
nu = 0.02:0.4
q_z = 0.9
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = standard-error
population = received

[protocol.t12-combined]
kind = t12
estimation = combined
nu2 = 0.01
mu = 0.05:0.95
nu = 0.02:0.4
q_z = 0.9
p_mu = 0.05:0.93
p_nu = 0.02:0.93
fluctuation = standard-error
population = received
)"},
};

} // namespace

const std::vector<std::string>& builtin_scenario_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& b : kBuiltins) v.push_back(b.name);
        return v;
    }();
    return names;
}

bool is_builtin_scenario(const std::string& name) {
    for (const auto& b : kBuiltins)
        if (name == b.name) return true;
    return false;
}

std::string builtin_config(const std::string& name) {
    for (const auto& b : kBuiltins)
        if (name == b.name) return b.text;
    throw ConfigError("unknown builtin scenario '" + name + "'");
}

Scenario builtin_scenario(const std::string& name) {
    return parse_config(builtin_config(name), name);
}

} // namespace decoyrate
