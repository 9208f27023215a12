#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "decoyrate/channel.hpp"
#include "decoyrate/harness.hpp"
#include "decoyrate/format.hpp"
#include "decoyrate/scenario.hpp"
#include "decoyrate/simulator.hpp"

namespace {

using namespace decoyrate;

// Builtin name, else a config file path.
Scenario load_scenario(const std::string& ref) {
    if (is_builtin_scenario(ref)) return builtin_scenario(ref);
    std::ifstream in(ref, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + ref + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::filesystem::path(ref).stem().string());
}

int cmd_run(const std::string& ref, const RunOptions& opts) {
    Scenario s = load_scenario(ref);
    RunReport report = run_scenario(s, opts);
    std::cout << "wrote " << report.csv_path << '\n';
    std::cout << "wrote " << report.manifest_path << '\n';
    if (report.plot_path) std::cout << "wrote " << *report.plot_path << '\n';
    return 0;
}

// Midpoint of a free interval: the simulation needs concrete parameters.
double resolve(const ValueSpec& v) {
    return v.free ? 0.5 * (v.lo + v.hi) : v.value;
}

int cmd_simulate(const std::string& ref, std::uint64_t pulses,
                 std::uint64_t seed) {
    Scenario s = load_scenario(ref);
    const ProtocolSpec& spec = s.protocols.front();
    const double axis0 =
        s.axis_is_distance ? s.distance_km.front() : s.loss_db.front();
    ChannelParams ch = s.channel;
    ch.loss_db = s.axis_is_distance ? axis0 * s.channel.fiber_loss_db_per_km
                                    : axis0;

    ProtocolConfig cfg;
    cfg.kind = spec.kind;
    cfg.mu = resolve(spec.mu);
    cfg.nu = resolve(spec.nu);
    cfg.nu2 = resolve(spec.nu2);
    cfg.q_z = resolve(spec.q_z);
    cfg.p_mu = resolve(spec.p_mu);
    cfg.p_nu = resolve(spec.p_nu);

    SimulationRun run = simulate_counts(ch, cfg, pulses, seed);
    std::cout << "generator = " << run.generator << '\n';
    std::cout << "seed = " << run.seed << '\n';
    std::cout << "pulses = " << run.pulses << '\n';
    std::cout << "protocol = " << spec.label << '\n';
    std::cout << "loss_db = " << format_double(ch.loss_db) << '\n';
    std::cout << "intensity,probability,sent,clicks,errors,"
                 "gain_emp,gain_model,qber_emp,qber_model\n";
    for (const auto& c : run.per_intensity) {
        const double q = gain(ch, c.intensity);
        const double e = q > 0.0 ? qber(ch, c.intensity) : 0.0;
        std::cout << format_double(c.intensity) << ','
                  << format_double(c.probability) << ',' << c.sent << ','
                  << c.clicks << ',' << c.errors << ','
                  << format_double(c.gain_emp) << ',' << format_double(q) << ','
                  << format_double(c.qber_emp) << ',' << format_double(e)
                  << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-key decoy-state QKD rate calculator"};
    app.require_subcommand(1);

    std::string run_ref;
    RunOptions opts;
    std::uint64_t seed_arg = 0;
    auto* run = app.add_subcommand(
        "run", "Run a scenario and write CSV + manifest outputs");
    run->add_option("scenario", run_ref, "Builtin scenario name or config file")
        ->required();
    run->add_option("--out", opts.out_dir, "Output directory")->required();
    run->add_option("--jobs", opts.jobs, "Concurrent cells (default 1)");
    auto* seed_opt =
        run->add_option("--seed", seed_arg, "Recorded in the manifest header");

    std::string sim_ref;
    std::uint64_t pulses = 0;
    std::uint64_t sim_seed = 0;
    auto* sim = app.add_subcommand(
        "simulate", "Monte Carlo pulse counts for a scenario's first protocol");
    sim->add_option("scenario", sim_ref, "Builtin scenario name or config file")
        ->required();
    sim->add_option("--pulses", pulses, "Number of pulses")->required();
    sim->add_option("--seed", sim_seed, "Generator seed")->required();

    auto* list =
        app.add_subcommand("list-scenarios", "List builtin scenario names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& name : builtin_scenario_names())
                std::cout << name << '\n';
            return 0;
        }
        if (run->parsed()) {
            if (seed_opt->count()) opts.seed = seed_arg;
            return cmd_run(run_ref, opts);
        }
        return cmd_simulate(sim_ref, pulses, sim_seed);
    } catch (const decoyrate::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const decoyrate::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
