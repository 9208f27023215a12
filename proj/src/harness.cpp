#include "decoyrate/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include "decoyrate/format.hpp"
#include "decoyrate/numerics.hpp"
#include "decoyrate/security.hpp"

namespace decoyrate {

namespace {

// Free parameters enter the search space in this fixed order; it decides the
// coordinate-refinement sweep sequence and therefore exact tie-breaking.
void collect_free(const ProtocolSpec& spec, ProtocolConfig& cfg,
                  SearchSpace& space,
                  std::vector<double ProtocolConfig::*>& members) {
    auto add = [&](const ValueSpec& v, double ProtocolConfig::*m) {
        if (v.free) {
            space.bounds.push_back({v.lo, v.hi});
            members.push_back(m);
            cfg.*m = v.lo;
        } else {
            cfg.*m = v.value;
        }
    };
    add(spec.mu, &ProtocolConfig::mu);
    add(spec.nu, &ProtocolConfig::nu);
    add(spec.nu2, &ProtocolConfig::nu2);
    add(spec.q_z, &ProtocolConfig::q_z);
    add(spec.p_mu, &ProtocolConfig::p_mu);
    add(spec.p_nu, &ProtocolConfig::p_nu);
}

struct CellJob {
    const ProtocolSpec* spec = nullptr;
    double loss_db = 0.0;
    double distance_km = 0.0;
    double n_pulses = 0.0;
    double zeta = 0.0;
    bool asymptotic = false;
};

std::vector<CellJob> enumerate_cells(const Scenario& s) {
    const std::vector<double>& axis =
        s.axis_is_distance ? s.distance_km : s.loss_db;
    const double alpha = s.channel.fiber_loss_db_per_km;
    std::vector<CellJob> jobs;
    for (const auto& p : s.protocols)
        for (double a : axis) {
            CellJob j;
            j.spec = &p;
            j.loss_db = s.axis_is_distance ? a * alpha : a;
            j.distance_km = s.axis_is_distance ? a : (alpha > 0 ? a / alpha : 0.0);
            for (double n : s.n_pulses) {
                j.n_pulses = n;
                for (double z : s.zeta) {
                    j.zeta = z;
                    j.asymptotic = false;
                    jobs.push_back(j);
                }
                if (s.include_asymptotic) {
                    j.zeta = s.zeta.front();
                    j.asymptotic = true;
                    jobs.push_back(j);
                }
            }
        }
    return jobs;
}

void for_each_index(std::size_t count, int jobs,
                    const std::function<void(std::size_t)>& work) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto runner = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                work(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int n = std::min<std::size_t>(jobs, count);
    pool.reserve(n);
    for (int k = 0; k < n; ++k) pool.emplace_back(runner);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::string write_file(const std::filesystem::path& path,
                       const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << body;
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
    return path.string();
}

std::string fmt_bool(bool b) { return b ? "1" : "0"; }

} // namespace

CellResult optimize_cell(const ProtocolSpec& spec, const ChannelParams& channel,
                         double loss_db, double distance_km, double n_pulses,
                         double zeta, const OptimizerSettings& settings,
                         bool asymptotic,
                         std::optional<FluctuationModel::Kind> fluct_override) {
    if (spec.kind == ProtocolKind::T12 &&
        spec.estimation == EstimationMethod::Combined) {
        ProtocolSpec ts = spec;
        ts.estimation = EstimationMethod::TS;
        ProtocolSpec td = spec;
        td.estimation = EstimationMethod::TD;
        CellResult a = optimize_cell(ts, channel, loss_db, distance_km,
                                     n_pulses, zeta, settings, asymptotic,
                                     fluct_override);
        CellResult b = optimize_cell(td, channel, loss_db, distance_km,
                                     n_pulses, zeta, settings, asymptotic,
                                     fluct_override);
        CellResult win = b.rate.rate > a.rate.rate ? b : a;
        win.evaluations = a.evaluations + b.evaluations;
        win.protocol = spec.label;
        return win;
    }

    ChannelParams ch = channel;
    ch.loss_db = loss_db;

    ProtocolConfig cfg;
    cfg.kind = spec.kind;
    cfg.estimation = spec.estimation;
    cfg.n_pulses = n_pulses;
    cfg.zeta = zeta;
    cfg.f_ec = spec.f_ec;
    cfg.sifting_exponent = spec.sifting_exponent;
    cfg.fluctuation = fluct_override.value_or(spec.fluctuation);
    cfg.population = spec.population;
    cfg.n_pe = spec.n_pe;
    cfg.allow_swapped_intensities = spec.allow_mu_below_nu;

    SearchSpace space;
    std::vector<double ProtocolConfig::*> members;
    collect_free(spec, cfg, space, members);

    CellResult cell;
    cell.protocol = spec.label;
    cell.loss_db = loss_db;
    cell.distance_km = distance_km;
    cell.n_pulses = n_pulses;
    cell.zeta = asymptotic ? 0.0 : zeta;
    cell.asymptotic = asymptotic;

    auto eval_cfg = [&](const ProtocolConfig& c) {
        return asymptotic ? asymptotic_rate(c, ch) : evaluate(c, ch);
    };
    if (space.bounds.empty()) {
        cell.rate = eval_cfg(cfg);
        cell.evaluations = 1;
    } else {
        auto objective = [&](const std::vector<double>& x) {
            for (std::size_t i = 0; i < members.size(); ++i)
                cfg.*members[i] = x[i];
            return eval_cfg(cfg).rate;
        };
        OptimizationResult opt = maximize_rate(objective, space, settings);
        for (std::size_t i = 0; i < members.size(); ++i)
            cfg.*members[i] = opt.x[i];
        cell.rate = eval_cfg(cfg);
        cell.evaluations = opt.evaluations + 1;
    }
    cell.config = cfg;
    return cell;
}

std::vector<CellResult> run_cells(const Scenario& s, int jobs) {
    const std::vector<CellJob> plan = enumerate_cells(s);
    std::vector<CellResult> cells(plan.size());
    for_each_index(plan.size(), jobs, [&](std::size_t i) {
        const CellJob& j = plan[i];
        cells[i] = optimize_cell(*j.spec, s.channel, j.loss_db, j.distance_km,
                                 j.n_pulses, j.zeta, s.optimizer, j.asymptotic);
    });
    return cells;
}

std::vector<DeviationRow> deviation_table(const Scenario& s, int jobs) {
    for (const auto& p : s.protocols)
        if (p.fluctuation != FluctuationModel::Kind::StandardError)
            throw ConfigError(
                "the deviation table needs fluctuation = standard-error");

    const std::vector<CellJob> plan = enumerate_cells(s);
    std::vector<DeviationRow> rows(plan.size());
    for_each_index(plan.size(), jobs, [&](std::size_t i) {
        const CellJob& j = plan[i];
        // Working point: best parameters with fluctuation switched off.
        CellResult wp = optimize_cell(*j.spec, s.channel, j.loss_db,
                                      j.distance_km, j.n_pulses, j.zeta,
                                      s.optimizer, false,
                                      FluctuationModel::Kind::None);
        ChannelParams ch = s.channel;
        ch.loss_db = j.loss_db;
        ProtocolConfig on = wp.config;
        on.fluctuation = j.spec->fluctuation;
        const RateResult r_on = evaluate(on, ch);
        const RateResult r_asym = asymptotic_rate(on, ch);

        const SecurityBudget budget =
            allocate_budget(j.zeta, family_of(on.kind), resolved_n_pe(on));
        const double u = gaussian_quantile(budget.eps_pe);
        const double q_mu = gain(ch, on.mu);
        const double q_nu = gain(ch, on.nu);
        const double p_0 = 1.0 - on.p_mu - on.p_nu;
        const double n = j.n_pulses;

        DeviationRow row;
        row.protocol = j.spec->label;
        row.loss_db = j.loss_db;
        row.n_pulses = n;
        row.zeta = j.zeta;
        row.config = wp.config;
        row.rate_off = wp.rate.rate;
        row.rate_on = r_on.rate;
        row.rate_asymptotic = r_asym.rate;
        row.dq_mu = u / std::sqrt(n * on.p_mu * q_mu);
        row.dq_nu = u / std::sqrt(n * on.p_nu * q_nu);
        row.dy0 = u / std::sqrt(n * p_0 * ch.dark_count_yield);
        row.dq0 = row.dy0;
        row.dtheta = wp.rate.theta > 0.0
                         ? std::fabs(r_on.theta - wp.rate.theta) / wp.rate.theta
                         : 0.0;
        row.dr = r_asym.rate > 0.0
                     ? (wp.rate.rate - r_on.rate) / r_asym.rate
                     : 0.0;
        rows[i] = row;
    });
    return rows;
}

std::string curves_csv(const Scenario& s, const std::vector<CellResult>& cells) {
    (void)s;
    std::string out =
        "protocol,t_db,distance_km,n_pulses,zeta,asymptotic,rate,"
        "mu,nu,nu2,q_z,p_mu,p_nu,"
        "q_mu,e_mu,y0_l,y1_l,q1_l,q0,e1_u,e_ph,theta,n_sift,leak_ec,"
        "ev_bits,pa_bits,delta_mu,delta_nu,feasible,collapsed,evaluations\n";
    for (const auto& c : cells) {
        const ProtocolConfig& g = c.config;
        const RateResult& r = c.rate;
        out += c.protocol;
        for (double v : {c.loss_db, c.distance_km, c.n_pulses, c.zeta}) {
            out += ',';
            out += format_double(v);
        }
        out += ',';
        out += fmt_bool(c.asymptotic);
        for (double v : {floor_rate(r.rate), g.mu, g.nu, g.nu2, g.q_z, g.p_mu,
                         g.p_nu, r.Q_mu, r.E_mu, r.Y0_L, r.Y1_L, r.Q1_L, r.Q0,
                         r.e1_U, r.e_ph, r.theta, r.n_sift, r.leak_ec,
                         r.ev_bits, r.pa_bits, r.delta_mu, r.delta_nu}) {
            out += ',';
            out += format_double(v);
        }
        out += ',';
        out += fmt_bool(r.feasible);
        out += ',';
        out += fmt_bool(r.collapsed);
        out += ',';
        out += std::to_string(c.evaluations);
        out += '\n';
    }
    return out;
}

std::string table1_csv(const Scenario& s, const std::vector<DeviationRow>& rows) {
    (void)s;
    std::string out =
        "protocol,t_db,n_pulses,zeta,mu,nu,q_z,p_mu,p_nu,"
        "rate_off,rate_on,rate_asymptotic,"
        "dq_mu_rel,dq_nu_rel,dy0_rel,dq0_rel,dtheta_rel,dr_rel\n";
    for (const auto& r : rows) {
        out += r.protocol;
        for (double v :
             {r.loss_db, r.n_pulses, r.zeta, r.config.mu, r.config.nu,
              r.config.q_z, r.config.p_mu, r.config.p_nu, r.rate_off, r.rate_on,
              r.rate_asymptotic, r.dq_mu, r.dq_nu, r.dy0, r.dq0, r.dtheta,
              r.dr}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string table2_csv(const Scenario& s, const std::vector<CellResult>& cells) {
    const std::string& base = s.protocols.front().label;
    std::string out =
        "t_db,distance_km,n_pulses,zeta,asymptotic,"
        "protocol_base,rate_base,protocol,rate,increase_rel\n";
    for (const auto& c : cells) {
        if (c.protocol != base) continue;
        for (const auto& o : cells) {
            if (o.protocol == base || o.loss_db != c.loss_db ||
                o.n_pulses != c.n_pulses || o.zeta != c.zeta ||
                o.asymptotic != c.asymptotic)
                continue;
            const double rb = floor_rate(c.rate.rate);
            const double ro = floor_rate(o.rate.rate);
            out += format_double(c.loss_db);
            out += ',';
            out += format_double(c.distance_km);
            out += ',';
            out += format_double(c.n_pulses);
            out += ',';
            out += format_double(c.zeta);
            out += ',';
            out += fmt_bool(c.asymptotic);
            out += ',';
            out += base;
            out += ',';
            out += format_double(rb);
            out += ',';
            out += o.protocol;
            out += ',';
            out += format_double(ro);
            out += ',';
            out += format_double(rb > 0.0 ? (ro - rb) / rb : 0.0);
            out += '\n';
        }
    }
    return out;
}

std::string table3_csv(const Scenario& s, const std::vector<CellResult>& cells) {
    std::string out =
        "protocol,distance_km,t_db,n_pulses,zeta,asymptotic,rate,mbit_per_s,"
        "mu,nu,nu2,q_z,p_mu,p_nu\n";
    for (const auto& c : cells) {
        const double rate = floor_rate(c.rate.rate);
        out += c.protocol;
        for (double v : {c.distance_km, c.loss_db, c.n_pulses, c.zeta}) {
            out += ',';
            out += format_double(v);
        }
        out += ',';
        out += fmt_bool(c.asymptotic);
        for (double v : {rate, rate * s.clock_rate_hz / 1e6, c.config.mu,
                         c.config.nu, c.config.nu2, c.config.q_z, c.config.p_mu,
                         c.config.p_nu}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string plot_csv(const Scenario& s, const std::vector<CellResult>& cells) {
    std::string out = "x,y,series\n";
    for (const auto& c : cells) {
        const double x = s.axis_is_distance ? c.distance_km : c.loss_db;
        out += format_double(x);
        out += ',';
        out += format_double(floor_rate(c.rate.rate));
        out += ',';
        out += c.protocol + "|N=" + format_double(c.n_pulses) + "|zeta=" +
               (c.asymptotic ? std::string("asym") : format_double(c.zeta));
        out += '\n';
    }
    return out;
}

RunReport run_scenario(const Scenario& s, const RunOptions& opts) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + opts.out_dir + ": " +
                      ec.message());

    std::string csv;
    std::optional<std::string> plot;
    if (s.kind == ScenarioKind::Table1) {
        csv = table1_csv(s, deviation_table(s, opts.jobs));
    } else {
        const std::vector<CellResult> cells = run_cells(s, opts.jobs);
        switch (s.kind) {
            case ScenarioKind::Table2: csv = table2_csv(s, cells); break;
            case ScenarioKind::Table3: csv = table3_csv(s, cells); break;
            default: csv = curves_csv(s, cells); break;
        }
        if (s.plot_data) plot = plot_csv(s, cells);
    }

    std::string manifest =
        "# run manifest; rerun with: decoyrate run <this file> --out <dir>\n";
    if (opts.seed) manifest += "# seed = " + std::to_string(*opts.seed) + "\n";
    manifest += serialize_scenario(s);

    const fs::path dir(opts.out_dir);
    RunReport report;
    report.csv_path = write_file(dir / (s.name + ".csv"), csv);
    report.manifest_path = write_file(dir / (s.name + ".manifest"), manifest);
    if (plot) report.plot_path = write_file(dir / (s.name + "_plot.csv"), *plot);
    return report;
}

} // namespace decoyrate
