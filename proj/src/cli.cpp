#include "harqee/cli.hpp"

#include "harqee/baselines.hpp"
#include "harqee/channel_sim.hpp"
#include "harqee/corefns.hpp"
#include "harqee/detail/parallel.hpp"
#include "harqee/limits.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace harqee {

namespace {

constexpr double kLowOutage = 1e-2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChannelFlags {
    std::string scheme = "all";
    int rounds = 1;
    double rho = 0.0;
    std::string sigma2 = "1";
    double epsilon = 1e-2;
    double t0 = 1.0;

    ChannelSpec channel(bool allow_quasi_static = false) const
    {
        ChannelSpec spec;
        spec.rounds = rounds;
        spec.rho = rho;
        const auto values = parse_number_list(sigma2);
        if (values.size() == 1) spec.sigma2.assign(static_cast<std::size_t>(std::max(rounds, 0)), values.front());
        else spec.sigma2 = values;
        if (allow_quasi_static) spec.validate_for_simulation();
        else spec.validate();
        return spec;
    }

    QosSpec qos() const { return {epsilon, t0}; }

    std::vector<Scheme> schemes() const
    {
        const std::string s = scheme;
        if (s == "all") return {std::begin(kAllSchemes), std::end(kAllSchemes)};
        std::vector<Scheme> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(parse_scheme(item));
        return out;
    }
};

void add_channel_flags(CLI::App* cmd, ChannelFlags& f, bool need_qos)
{
    cmd->add_option("--L", f.rounds, "maximal number of transmissions")->required()->default_str("");
    cmd->add_option("--rho", f.rho, "time correlation coefficient");
    cmd->add_option("--sigma2", f.sigma2, "channel variance: scalar or comma list with one value per round");
    auto* eps = cmd->add_option("--eps", f.epsilon, "outage tolerance");
    auto* t0 = cmd->add_option("--t0", f.t0, "minimum goodput, bits/s/Hz");
    if (need_qos) {
        eps->required()->default_str("");
        t0->required()->default_str("");
    }
}

std::string join_ladder(const PowerLadder& ladder)
{
    std::string s;
    for (std::size_t i = 0; i < ladder.powers.size(); ++i) {
        if (i) s += ';';
        s += format_number(ladder.powers[i]);
    }
    return s;
}

void require_valid(const Solution& s, const QosSpec& qos, const std::string& where)
{
    const std::string why = check_solution(s, qos);
    if (!why.empty()) throw InvariantError(where + ": " + why);
}

void emit(const CsvTable& table, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        table.write(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + path + "'");
    table.write(file);
    if (!file) throw std::runtime_error("error while writing '" + path + "'");
}

std::string infeasible_message(const Solution& s)
{
    return "infeasible (" + std::string(to_string(s.scheme)) + "): " + s.reason;
}

int cmd_solve(const ChannelFlags& f, const std::string& out_path, std::ostream& out, std::ostream& err)
{
    const ChannelSpec spec = f.channel();
    const auto schemes = f.schemes();
    std::vector<std::string> header{"scheme", "L", "rho", "epsilon", "t0", "R*", "alpha*"};
    for (int l = 1; l <= spec.rounds; ++l) header.push_back("P" + std::to_string(l));
    for (const char* c : {"avg_power", "ee", "goodput", "se"}) header.emplace_back(c);
    CsvTable table(header);
    for (Scheme scheme : schemes) {
        const Solution s = solve(scheme, spec, f.qos());
        if (!s.feasible) {
            err << infeasible_message(s) << '\n';
            return kExitFailure;
        }
        require_valid(s, f.qos(), "solve");
        std::vector<std::string> row{std::string(to_string(scheme)), std::to_string(spec.rounds), format_number(spec.rho),
                                     format_number(f.epsilon), format_number(f.t0), format_number(s.rate),
                                     format_number(s.alpha)};
        for (double p : s.ladder.powers) row.push_back(format_number(p));
        for (double v : {s.avg_power, s.ee, s.goodput, s.spectral_efficiency}) row.push_back(format_number(v));
        table.add_row(row);
    }
    emit(table, out_path, out);
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path, unsigned workers, std::ostream& out)
{
    const auto sweeps = load_sweep_config(config_path);
    // Tables are grouped by destination; sweeps without `out` go to --out or stdout.
    std::vector<std::string> order;
    std::map<std::string, CsvTable> tables;
    for (const auto& cfg : sweeps) {
        const std::string dest = cfg.output_path.empty() ? out_path : cfg.output_path;
        const CsvTable rows = run_sweep(cfg, workers);
        auto it = tables.find(dest);
        if (it == tables.end()) {
            order.push_back(dest);
            tables.emplace(dest, rows);
        } else {
            it->second.append(rows);
        }
    }
    for (const auto& dest : order) emit(tables.at(dest), dest, out);
    return kExitOk;
}

int cmd_simulate(const ChannelFlags& f, const std::string& powers, double rate, std::uint64_t seed,
                 std::uint64_t trials, unsigned workers, const std::string& out_path, std::ostream& out,
                 std::ostream& err)
{
    if (trials == 0) throw UsageError("--trials must be >= 1");
    const bool fixed_design = !powers.empty();
    const ChannelSpec spec = f.channel(fixed_design);
    CsvTable table({"scheme", "L", "rho", "rate", "trials", "seed", "round", "power", "p_out_asym", "p_out_sim",
                    "halfwidth", "unreliable", "ee_asym", "ee_sim", "se_sim"});
    for (Scheme scheme : f.schemes()) {
        PowerLadder ladder;
        double r = rate;
        std::vector<double> asym;
        double ee_asym = std::nan("");
        if (fixed_design) {
            ladder.powers = parse_number_list(powers);
            if (ladder.rounds() != spec.rounds) throw UsageError("--powers must list exactly L values");
            if (!(r > 0.0)) throw UsageError("--rate must be > 0 when --powers is given");
            if (spec.rho < 1.0 && spec.rounds <= kMaxRounds) {
                bool positive = true;
                for (double p : ladder.powers) positive = positive && p > 0.0;
                if (positive) asym = asymptotic_outage(scheme, spec, ladder, r);
            }
        } else {
            const Solution s = solve(scheme, spec, f.qos());
            if (!s.feasible) {
                err << infeasible_message(s) << '\n';
                return kExitFailure;
            }
            require_valid(s, f.qos(), "simulate");
            ladder = s.ladder;
            r = s.rate;
            ee_asym = s.ee;
            asym = asymptotic_outage(scheme, spec, ladder, r);
        }
        const auto rep = estimate_outage(scheme, spec, ladder, r, seed, trials, workers);
        for (int l = 1; l <= spec.rounds; ++l) {
            const auto i = static_cast<std::size_t>(l - 1);
            table.add_row({std::string(to_string(scheme)), std::to_string(spec.rounds), format_number(spec.rho),
                           format_number(r), std::to_string(trials), std::to_string(seed), std::to_string(l),
                           format_number(ladder.powers[i]), asym.empty() ? "" : format_number(asym[i + 1]),
                           format_number(rep.outage[i]), format_number(rep.outage_halfwidth[i]),
                           rep.unreliable[i] ? "1" : "0", std::isnan(ee_asym) ? "" : format_number(ee_asym),
                           format_number(rep.energy_efficiency), format_number(rep.spectral_efficiency)});
        }
    }
    emit(table, out_path, out);
    return kExitOk;
}

int cmd_verify(const ChannelFlags& f, std::uint64_t seed, std::uint64_t trials, double precision, int resolution,
               unsigned workers, const std::string& out_path, std::ostream& out, std::ostream& err)
{
    if (trials < 100000) throw UsageError("verify needs --trials >= 100000");
    const ChannelSpec spec = f.channel();
    const QosSpec qos = f.qos();
    CsvTable table({"scheme", "L", "rho", "epsilon", "t0", "rate", "alpha", "sim_outage", "sim_halfwidth",
                    "sim_unreliable", "outage_rel_err", "low_outage", "ee", "sim_ee", "ee_rel_err", "oracle_ee",
                    "oracle_gap"});
    bool imprecise = false;
    for (Scheme scheme : f.schemes()) {
        const Solution s = solve(scheme, spec, qos);
        if (!s.feasible) {
            err << infeasible_message(s) << '\n';
            return kExitFailure;
        }
        require_valid(s, qos, "verify");
        const auto rep = estimate_outage(scheme, spec, s.ladder, s.rate, seed, trials, workers);
        const double p = rep.final_outage();
        const double hw = rep.final_halfwidth();
        if (precision > 0.0 && !(p > 0.0 && hw / p <= precision)) imprecise = true;

        std::string oracle_ee, oracle_gap;
        if (spec.rounds <= kOracleMaxRounds) {
            const auto oracle = grid_oracle_solve(scheme, spec, qos, resolution, 3, workers);
            oracle_ee = format_number(oracle.solution.ee);
            oracle_gap = format_number((oracle.solution.ee - s.ee) / s.ee);
        }
        table.add_row({std::string(to_string(scheme)), std::to_string(spec.rounds), format_number(spec.rho),
                       format_number(qos.epsilon), format_number(qos.t0), format_number(s.rate),
                       format_number(s.alpha), format_number(p), format_number(hw),
                       rep.unreliable.back() ? "1" : "0", format_number(std::abs(p - s.alpha) / s.alpha),
                       s.alpha <= kLowOutage ? "1" : "0", format_number(s.ee), format_number(rep.energy_efficiency),
                       format_number(std::abs(rep.energy_efficiency - s.ee) / s.ee), oracle_ee, oracle_gap});
    }
    emit(table, out_path, out);
    if (imprecise) {
        err << "simulation half-width exceeds the requested relative precision " << precision
            << "; increase --trials\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_limits(double rho, double t0, int digits, const std::string& out_path, std::ostream& out)
{
    if (digits < 0 || digits > 17) throw UsageError("--digits must lie in [0, 17]");
    if (!(rho >= 0.0 && rho < 1.0)) throw UsageError("--rho must lie in [0, 1)");
    if (!(t0 > 0.0)) throw UsageError("--t0 must be > 0");
    CsvTable table({"scheme", "rho", "t0", "theta_inf", "kappa_inf", "ee_limit", "ee_lower", "ceiling"});
    for (Scheme scheme : kAllSchemes) {
        const auto rep = ee_limit(scheme, rho, t0);
        table.add_row({std::string(to_string(scheme)), format_number(rho), format_number(t0),
                       format_fixed(rep.theta_inf, digits), format_fixed(rep.kappa_inf, digits),
                       format_fixed(rep.ee_limit, digits), format_fixed(rep.ee_lower, digits),
                       format_fixed(rep.ceiling, digits)});
    }
    emit(table, out_path, out);
    return kExitOk;
}

}  // namespace

std::vector<std::string> sweep_header()
{
    return {"sweep",   "scheme",     "axis",      "value",    "L",         "rho",          "epsilon",
            "t0",      "status",     "rate",      "alpha",    "ladder",    "avg_power",    "ee",
            "goodput", "se",         "uniform_ee", "uniform_gap", "mc_trials", "mc_outage", "mc_halfwidth",
            "mc_ee",   "mc_unreliable"};
}

CsvTable run_sweep(const SweepConfig& cfg, unsigned workers)
{
    const std::size_t n_values = cfg.values.size();
    const std::size_t n = cfg.schemes.size() * n_values;
    std::vector<std::vector<std::string>> rows(n);
    const unsigned point_workers = detail::resolve_workers(workers, n);

    detail::parallel_for(n, point_workers, [&](std::size_t i) {
        const Scheme scheme = cfg.schemes[i / n_values];
        const double value = cfg.values[i % n_values];
        const ChannelSpec spec = cfg.channel_at(value);
        const QosSpec qos = cfg.qos_at(value);
        std::vector<std::string> row{cfg.name,
                                     std::string(to_string(scheme)),
                                     std::string(to_string(cfg.axis)),
                                     format_number(value),
                                     std::to_string(spec.rounds),
                                     format_number(spec.rho),
                                     format_number(qos.epsilon),
                                     format_number(qos.t0)};
        const Solution s = solve(scheme, spec, qos);
        if (!s.feasible) {
            row.push_back("infeasible: " + s.reason);
            row.resize(sweep_header().size());
            rows[i] = std::move(row);
            return;
        }
        require_valid(s, qos, "sweep '" + cfg.name + "' at " + std::string(to_string(cfg.axis)) + " = " +
                                  format_number(value));
        row.push_back("ok");
        for (double v : {s.rate, s.alpha}) row.push_back(format_number(v));
        row.push_back(join_ladder(s.ladder));
        for (double v : {s.avg_power, s.ee, s.goodput, s.spectral_efficiency}) row.push_back(format_number(v));
        if (cfg.uniform) {
            const auto u = uniform_power_solve(scheme, spec, qos);
            row.push_back(format_number(u.solution.ee));
            row.push_back(format_number(1.0 - u.solution.ee / s.ee));
        } else {
            row.insert(row.end(), 2, "");
        }
        if (cfg.trials > 0) {
            const unsigned mc_workers = point_workers > 1 ? 1 : workers;
            const auto rep = estimate_outage(scheme, spec, s.ladder, s.rate, cfg.seed, cfg.trials, mc_workers);
            row.push_back(std::to_string(cfg.trials));
            row.push_back(format_number(rep.final_outage()));
            row.push_back(format_number(rep.final_halfwidth()));
            row.push_back(format_number(rep.energy_efficiency));
            row.push_back(rep.unreliable.back() ? "1" : "0");
        } else {
            row.insert(row.end(), 5, "");
        }
        rows[i] = std::move(row);
    });

    CsvTable table(sweep_header());
    for (auto& row : rows) table.add_row(std::move(row));
    return table;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Energy-efficient HARQ power allocation and rate selection"};
    app.name("harqee");
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    ChannelFlags flags;
    std::string out_path;
    std::string config_path;
    std::string powers;
    double rate = 0.0;
    std::uint64_t seed = 1;
    std::uint64_t trials = 1000000;
    double precision = 0.0;
    int resolution = 101;
    int digits = 6;
    unsigned workers = 0;

    auto* solve_cmd = app.add_subcommand("solve", "optimal ladder, rate and target outage");
    solve_cmd->add_option("--scheme", flags.scheme, "typei, cc, ir, a comma list or all")->required()->default_str("");
    add_channel_flags(solve_cmd, flags, true);
    solve_cmd->add_option("--out", out_path, "write CSV here instead of stdout");

    auto* sweep_cmd = app.add_subcommand("sweep", "run the sweeps of a config file");
    sweep_cmd->add_option("--config", config_path, "sweep description file")->required();
    sweep_cmd->add_option("--out", out_path, "destination for sweeps without an 'out' key");
    sweep_cmd->add_option("--workers", workers, "threads, 0 = all cores");

    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo outage and energy efficiency");
    sim_cmd->add_option("--scheme", flags.scheme, "typei, cc, ir, a comma list or all");
    add_channel_flags(sim_cmd, flags, false);
    sim_cmd->add_option("--powers", powers, "simulate this ladder (comma list) instead of the optimum");
    sim_cmd->add_option("--rate", rate, "rate for --powers");
    sim_cmd->add_option("--seed", seed, "random seed");
    sim_cmd->add_option("--trials", trials, "Monte Carlo trials");
    sim_cmd->add_option("--workers", workers, "threads, 0 = all cores");
    sim_cmd->add_option("--out", out_path, "write CSV here instead of stdout");

    auto* verify_cmd = app.add_subcommand("verify", "closed form against simulation and grid search");
    verify_cmd->add_option("--scheme", flags.scheme, "typei, cc, ir, a comma list or all");
    add_channel_flags(verify_cmd, flags, true);
    verify_cmd->add_option("--seed", seed, "random seed");
    verify_cmd->add_option("--trials", trials, "Monte Carlo trials (>= 1e5)");
    verify_cmd->add_option("--precision", precision,
                           "fail when the outage half-width exceeds this fraction of the estimate");
    verify_cmd->add_option("--resolution", resolution, "grid oracle points per dimension");
    verify_cmd->add_option("--workers", workers, "threads, 0 = all cores");
    verify_cmd->add_option("--out", out_path, "write CSV here instead of stdout");

    auto* limits_cmd = app.add_subcommand("limits", "large-L limits of the optimal energy efficiency");
    limits_cmd->add_option("--rho", flags.rho, "time correlation coefficient");
    limits_cmd->add_option("--t0", flags.t0, "minimum goodput, bits/s/Hz");
    limits_cmd->add_option("--digits", digits, "decimal places");
    limits_cmd->add_option("--out", out_path, "write CSV here instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*solve_cmd) return cmd_solve(flags, out_path, out, err);
        if (*sweep_cmd) return cmd_sweep(config_path, out_path, workers, out);
        if (*sim_cmd) return cmd_simulate(flags, powers, rate, seed, trials, workers, out_path, out, err);
        if (*verify_cmd) return cmd_verify(flags, seed, trials, precision, resolution, workers, out_path, out, err);
        if (*limits_cmd) return cmd_limits(flags.rho, flags.t0, digits, out_path, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

}  // namespace harqee
