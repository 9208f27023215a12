#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decoyrate/scenario.hpp"

namespace decoyrate {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::string out_dir = ".";
    int jobs = 1;
    std::optional<std::uint64_t> seed; // echoed into the manifest header
};

// One optimized (protocol, channel point, N, zeta) cell. loss_db and
// distance_km always carry both views of the channel axis.
struct CellResult {
    std::string protocol;
    double loss_db = 0.0;
    double distance_km = 0.0;
    double n_pulses = 0.0;
    double zeta = 0.0; // 0 marks asymptotic ceiling rows
    bool asymptotic = false;
    ProtocolConfig config; // resolved parameters at the optimum
    RateResult rate;
    long long evaluations = 0;
};

// Rates below this print as exact 0: they are smaller than one secret bit
// per key block at any realistic N.
inline double floor_rate(double r) { return r < 1e-15 ? 0.0 : r; }

// Optimizes one cell over the arm's free parameters. fluct_override swaps
// the statistical-fluctuation treatment without touching anything else (the
// deviation table uses this to find its fluctuation-off working point).
// A combined-estimation arm runs one optimization per method and keeps the
// better result, so it reproduces max(ts, td) bitwise.
CellResult optimize_cell(const ProtocolSpec& spec, const ChannelParams& channel,
                         double loss_db, double distance_km, double n_pulses,
                         double zeta, const OptimizerSettings& settings,
                         bool asymptotic = false,
                         std::optional<FluctuationModel::Kind> fluct_override = {});

// Full scenario cell grid in deterministic order: protocols in config order,
// then the channel axis ascending as listed, then n_pulses, then zeta, with
// the asymptotic row (if requested) after the zeta rows. jobs > 1 computes
// cells concurrently; the output order and content do not change.
std::vector<CellResult> run_cells(const Scenario& s, int jobs = 1);

// Statistical-deviation summary at a working point: optimize with
// fluctuation off, then compare against the same point with the configured
// fluctuation on. All ratios are relative.
struct DeviationRow {
    std::string protocol;
    double loss_db = 0.0;
    double n_pulses = 0.0;
    double zeta = 0.0;
    ProtocolConfig config; // fluctuation-off working point
    double rate_off = 0.0;
    double rate_on = 0.0;
    double rate_asymptotic = 0.0;
    double dq_mu = 0.0;  // u / sqrt(N p_mu Q_mu)
    double dq_nu = 0.0;  // u / sqrt(N p_nu Q_nu)
    double dy0 = 0.0;    // u / sqrt(N p_0 Y_0)
    double dq0 = 0.0;    // equals dy0: Q_0 = Y_0 e^-mu is a rescaling
    double dtheta = 0.0; // shift of the applied phase-error deviation
    double dr = 0.0;     // (rate_off - rate_on) / rate_asymptotic
};

std::vector<DeviationRow> deviation_table(const Scenario& s, int jobs = 1);

// CSV renderers (UTF-8, '.' decimal, shortest round-trip numbers).
std::string curves_csv(const Scenario& s, const std::vector<CellResult>& cells);
std::string table1_csv(const Scenario& s, const std::vector<DeviationRow>& rows);
std::string table2_csv(const Scenario& s, const std::vector<CellResult>& cells);
std::string table3_csv(const Scenario& s, const std::vector<CellResult>& cells);
std::string plot_csv(const Scenario& s, const std::vector<CellResult>& cells);

struct RunReport {
    std::string csv_path;
    std::string manifest_path;
    std::optional<std::string> plot_path;
};

// Runs the scenario and writes <name>.csv, <name>.manifest and optionally
// <name>_plot.csv under opts.out_dir. Throws ConfigError or IoError.
RunReport run_scenario(const Scenario& s, const RunOptions& opts);

} // namespace decoyrate
