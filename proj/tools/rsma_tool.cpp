// rsma_tool: region tracing, single-scenario solves, sweeps and CDFs.
//
// Every subcommand reads one JSON config (--config). Command-line flags
// override the matching config keys; a warning is printed when both are set.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rsma/baselines.hpp"
#include "rsma/montecarlo.hpp"
#include "rsma/pairing.hpp"
#include "rsma/rate_region.hpp"
#include "rsma/rsma_exact.hpp"
#include "rsma/serialization.hpp"

using namespace rsma;

namespace {

json load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open config " + path);
    }
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config " + path + " is not valid JSON: " + e.what());
    }
}

const json& block(const json& config, const char* name) {
    static const json empty = json::object();
    return config.contains(name) ? config.at(name) : empty;
}

// Applies a flag over a config-derived value, warning when both were given.
template <class T>
void apply_flag(const CLI::Option* opt, const T& flag_value, const json& cfg_block, const char* key, T& target) {
    if (opt->count() == 0) {
        return;
    }
    if (cfg_block.contains(key)) {
        std::cerr << "warning: " << opt->get_name() << " overrides config key \"" << key << "\"\n";
    }
    target = flag_value;
}

Scenario config_scenario(const json& config) {
    if (config.contains("scenario")) {
        return scenario_from_json(config.at("scenario"));
    }
    if (config.contains("users")) {
        return scenario_from_json(config);
    }
    throw std::runtime_error("config has no \"scenario\" block");
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw std::runtime_error("cannot open " + path + " for writing");
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    void finish() {
        stream().flush();
        if (!stream()) {
            throw std::runtime_error("write failed");
        }
    }

private:
    std::ofstream file_;
};

void write_sidecar(const std::string& csv_path, json meta) {
    std::ofstream f(csv_path + ".json");
    if (!f) {
        throw std::runtime_error("cannot write " + csv_path + ".json");
    }
    f << meta.dump(2) << '\n';
}

std::vector<Scheme> parse_schemes(const std::vector<std::string>& names) {
    std::vector<Scheme> out;
    for (const auto& n : names) out.push_back(parse_scheme(n));
    return out;
}

struct CommonArgs {
    std::string config;
    std::string out = "-";
    bool verbose = false;
};

void add_common(CLI::App* sub, CommonArgs& a) {
    sub->add_option("-c,--config", a.config, "JSON config file")->required();
    sub->add_option("-o,--out", a.out, "Output path ('-' for stdout)");
    sub->add_flag("-v,--verbose", a.verbose, "Include diagnostic traces");
}

// ---------------------------------------------------------------- region

struct RegionArgs {
    CommonArgs common;
    std::size_t grid_points = 101;
    CLI::Option* grid_opt = nullptr;
};

int cmd_region(const RegionArgs& a) {
    const json config = load_config(a.common.config);
    const Scenario s = config_scenario(config);
    if (s.size() != 2) {
        throw std::runtime_error("region needs exactly 2 users, config has " + std::to_string(s.size()));
    }
    std::size_t grid = a.grid_points;
    const json& cfg = block(config, "region");
    if (cfg.contains("grid_points")) grid = cfg.at("grid_points").get<std::size_t>();
    apply_flag(a.grid_opt, a.grid_points, cfg, "grid_points", grid);

    const auto rows = sample_region(s, grid);
    Output out(a.common.out);
    auto& os = out.stream();
    os << "scheme,r1_bps,r2_bps,case\n";
    for (const auto& r : rows) {
        os << r.scheme << ',' << format_full(r.r1) << ',' << format_full(r.r2) << ',' << r.case_tag << '\n';
    }
    out.finish();
    return 0;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    CommonArgs common;
    std::vector<std::string> schemes;
    CLI::Option* schemes_opt = nullptr;
    bool recover = true;
    CLI::Option* recover_opt = nullptr;
    CLI::Option* no_recover_opt = nullptr;
    ScaOptions sca;
    CLI::Option* n_starts_opt = nullptr;
    CLI::Option* max_iter_opt = nullptr;
    CLI::Option* alpha_tol_opt = nullptr;
    CLI::Option* accept_tol_opt = nullptr;
    CLI::Option* barrier_gap_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    double pairing_eps = kDefaultPairingEps;
    CLI::Option* eps_opt = nullptr;
    double tau_tol = kDefaultTauTol;
    CLI::Option* tau_tol_opt = nullptr;
};

ScaOptions sca_from_json(const json& j) {
    ScaOptions o;
    if (j.contains("n_starts")) o.n_starts = j.at("n_starts").get<std::size_t>();
    if (j.contains("max_iterations")) o.max_iterations = j.at("max_iterations").get<std::size_t>();
    if (j.contains("alpha_tol")) o.alpha_tol = j.at("alpha_tol").get<double>();
    if (j.contains("accept_tol")) o.accept_tol = j.at("accept_tol").get<double>();
    if (j.contains("barrier_gap")) o.barrier_gap = j.at("barrier_gap").get<double>();
    if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
    return o;
}

int cmd_solve(const SolveArgs& a) {
    const json config = load_config(a.common.config);
    const Scenario s = config_scenario(config);
    const json& cfg = block(config, "solve");
    const json& sca_cfg = block(cfg, "sca");

    ScaOptions sca = sca_from_json(sca_cfg);
    apply_flag(a.n_starts_opt, a.sca.n_starts, sca_cfg, "n_starts", sca.n_starts);
    apply_flag(a.max_iter_opt, a.sca.max_iterations, sca_cfg, "max_iterations", sca.max_iterations);
    apply_flag(a.alpha_tol_opt, a.sca.alpha_tol, sca_cfg, "alpha_tol", sca.alpha_tol);
    apply_flag(a.accept_tol_opt, a.sca.accept_tol, sca_cfg, "accept_tol", sca.accept_tol);
    apply_flag(a.barrier_gap_opt, a.sca.barrier_gap, sca_cfg, "barrier_gap", sca.barrier_gap);
    apply_flag(a.seed_opt, a.sca.seed, sca_cfg, "seed", sca.seed);

    double eps = cfg.value("pairing_eps", kDefaultPairingEps);
    apply_flag(a.eps_opt, a.pairing_eps, cfg, "pairing_eps", eps);
    double tau_tol = cfg.value("tau_tol", kDefaultTauTol);
    apply_flag(a.tau_tol_opt, a.tau_tol, cfg, "tau_tol", tau_tol);

    // Recovery: explicit flag > config > automatic (on when K is within the cap).
    std::optional<bool> recover;
    if (cfg.contains("recover_order")) recover = cfg.at("recover_order").get<bool>();
    if (a.recover_opt->count() > 0 || a.no_recover_opt->count() > 0) {
        if (recover) std::cerr << "warning: recovery flag overrides config key \"recover_order\"\n";
        recover = a.recover;
    }
    const bool recover_explicit = recover.has_value() && *recover;
    const bool do_recover = recover.value_or(s.size() <= kMaxOrderSearchUsers);

    std::vector<Scheme> schemes;
    bool schemes_explicit = false;
    if (cfg.contains("schemes")) {
        schemes = parse_schemes(cfg.at("schemes").get<std::vector<std::string>>());
        schemes_explicit = true;
    }
    if (a.schemes_opt->count() > 0) {
        if (schemes_explicit) std::cerr << "warning: --schemes overrides config key \"schemes\"\n";
        schemes = parse_schemes(a.schemes);
        schemes_explicit = true;
    }
    if (!schemes_explicit) {
        for (Scheme sc : all_schemes()) {
            const bool paired = sc == Scheme::rsma_up_sw || sc == Scheme::rsma_up_sm || sc == Scheme::rsma_up_ss;
            if (!paired || s.size() % 2 == 0) schemes.push_back(sc);
        }
    }

    json result = {{"schema_version", kSchemaVersion}, {"seed", sca.seed}, {"scenario", scenario_to_json(s)}};
    result["sca_options"] = sca;
    result["pairing_eps"] = eps;
    json solutions = json::array();
    json failures = json::array();
    const auto fail = [&](Scheme sc, const std::string& msg) {
        failures.push_back({{"scheme", to_string(sc)}, {"error", msg}});
        std::cerr << "error: " << to_string(sc) << ": " << msg << '\n';
    };

    for (Scheme sc : schemes) {
        try {
            json sol;
            switch (sc) {
                case Scheme::rsma: {
                    const auto opt = rsma_optimal_sum_rate(s);
                    sol = opt;
                    if (do_recover) {
                        if (s.size() > kMaxOrderSearchUsers) {
                            sol["order_recovery"] = nullptr;
                            solutions.push_back(sol);
                            fail(sc, "decoding-order recovery is limited to K <= " +
                                         std::to_string(kMaxOrderSearchUsers) + " users (scenario has K=" +
                                         std::to_string(s.size()) + ")");
                            continue;
                        }
                        try {
                            const auto rec = recover_order_and_power(s, opt.rates, sca);
                            sol["order_recovery"] = rec;
                            if (a.common.verbose) sol["order_trace"] = rec.trace;
                        } catch (const OrderSearchFailed& e) {
                            sol["order_recovery"] = nullptr;
                            if (a.common.verbose) sol["order_trace"] = e.trace();
                            solutions.push_back(sol);
                            fail(sc, std::string(e.what()) + " (best alpha " + std::to_string(e.best_alpha()) + ")");
                            continue;
                        }
                    } else if (!recover_explicit && s.size() > kMaxOrderSearchUsers) {
                        sol["order_recovery"] = "skipped: K exceeds the order-search cap";
                    }
                    break;
                }
                case Scheme::noma: sol = noma_solve(s, tau_tol); break;
                case Scheme::fdma: sol = fdma_solve(s, tau_tol); break;
                case Scheme::tdma: sol = tdma_solve(s); break;
                default: {
                    const auto strategy = sc == Scheme::rsma_up_sw   ? PairingStrategy::sw
                                          : sc == Scheme::rsma_up_sm ? PairingStrategy::sm
                                                                     : PairingStrategy::ss;
                    sol = pairing_solve(s, make_pairs(s, strategy), eps);
                    break;
                }
            }
            solutions.push_back(sol);
        } catch (const std::exception& e) {
            fail(sc, e.what());
        }
    }
    result["solutions"] = solutions;
    try {
        result["ordering"] = check_ordering(s);
    } catch (const std::exception& e) {
        result["ordering"] = {{"error", e.what()}};
    }
    result["failures"] = failures;

    Output out(a.common.out);
    out.stream() << result.dump(2) << '\n';
    out.finish();
    return failures.empty() ? 0 : 1;
}

// ---------------------------------------------------------------- sweep / cdf

struct SweepArgs {
    CommonArgs common;
    std::string axis;
    CLI::Option* axis_opt = nullptr;
    std::vector<double> values;
    CLI::Option* values_opt = nullptr;
    std::size_t trials = 0;
    CLI::Option* trials_opt = nullptr;
    std::uint64_t seed = 1;
    CLI::Option* seed_opt = nullptr;
    std::vector<std::string> schemes;
    CLI::Option* schemes_opt = nullptr;
    double pairing_eps = kDefaultPairingEps;
    CLI::Option* eps_opt = nullptr;
    std::size_t threads = 0;
    CLI::Option* threads_opt = nullptr;
    std::size_t k = 0;
    CLI::Option* k_opt = nullptr;
};

void apply_model_flags(const SweepArgs& a, const json& config, DropModel& model) {
    apply_flag(a.k_opt, a.k, block(config, "drop"), "k", model.k);
}

int cmd_sweep(const SweepArgs& a) {
    const json config = load_config(a.common.config);
    const json& cfg = block(config, "sweep");
    DropModel model = drop_model_from_json(config);
    apply_model_flags(a, config, model);
    SweepSpec spec = sweep_spec_from_json(cfg);
    if (a.axis_opt->count() > 0) {
        if (cfg.contains("axis")) std::cerr << "warning: --axis overrides config key \"axis\"\n";
        spec.axis = parse_axis(a.axis);
    }
    apply_flag(a.values_opt, a.values, cfg, "values", spec.values);
    apply_flag(a.trials_opt, a.trials, cfg, "trials", spec.trials);
    apply_flag(a.seed_opt, a.seed, cfg, "seed", spec.seed);
    apply_flag(a.eps_opt, a.pairing_eps, cfg, "pairing_eps", spec.pairing_eps);
    apply_flag(a.threads_opt, a.threads, cfg, "threads", spec.threads);
    if (a.schemes_opt->count() > 0) {
        if (cfg.contains("schemes")) std::cerr << "warning: --schemes overrides config key \"schemes\"\n";
        spec.schemes = parse_schemes(a.schemes);
    }

    const auto rows = run_sweep(spec, model);
    Output out(a.common.out);
    write_sweep_csv(out.stream(), rows);
    out.finish();
    if (a.common.out != "-") {
        json meta = {{"schema_version", kSchemaVersion}, {"command", "sweep"}, {"seed", spec.seed}};
        meta["sweep"] = sweep_spec_to_json(spec);
        meta["model"] = drop_model_to_json(model);
        write_sidecar(a.common.out, meta);
    }
    return 0;
}

int cmd_cdf(const SweepArgs& a) {
    const json config = load_config(a.common.config);
    const json& cfg = block(config, "cdf");
    DropModel model = drop_model_from_json(config);
    apply_model_flags(a, config, model);
    CdfSpec spec = cdf_spec_from_json(cfg);
    apply_flag(a.trials_opt, a.trials, cfg, "trials", spec.trials);
    apply_flag(a.seed_opt, a.seed, cfg, "seed", spec.seed);
    apply_flag(a.eps_opt, a.pairing_eps, cfg, "pairing_eps", spec.pairing_eps);
    apply_flag(a.threads_opt, a.threads, cfg, "threads", spec.threads);
    if (a.schemes_opt->count() > 0) {
        if (cfg.contains("schemes")) std::cerr << "warning: --schemes overrides config key \"schemes\"\n";
        spec.schemes = parse_schemes(a.schemes);
    }

    const auto series = run_cdf(spec, model);
    Output out(a.common.out);
    write_cdf_csv(out.stream(), series);
    out.finish();
    if (a.common.out != "-") {
        json meta = {{"schema_version", kSchemaVersion}, {"command", "cdf"}, {"seed", spec.seed}};
        meta["cdf"] = cdf_spec_to_json(spec);
        meta["model"] = drop_model_to_json(model);
        write_sidecar(a.common.out, meta);
    }
    return 0;
}

void add_sca_flags(CLI::App* sub, SolveArgs& a) {
    a.n_starts_opt = sub->add_option("--n-starts", a.sca.n_starts, "SCA random starts per order")->capture_default_str();
    a.max_iter_opt =
        sub->add_option("--max-iterations", a.sca.max_iterations, "SCA iterations per start")->capture_default_str();
    a.alpha_tol_opt =
        sub->add_option("--alpha-tol", a.sca.alpha_tol, "SCA stop: |d alpha| <= tol * max(1, alpha)")->capture_default_str();
    a.accept_tol_opt =
        sub->add_option("--accept-tol", a.sca.accept_tol, "Order accepted when alpha >= 1 - tol")->capture_default_str();
    a.barrier_gap_opt =
        sub->add_option("--barrier-gap", a.sca.barrier_gap, "Barrier duality-gap target")->capture_default_str();
    a.seed_opt = sub->add_option("--seed", a.sca.seed, "SCA start seed")->capture_default_str();
}

void add_sweep_flags(CLI::App* sub, SweepArgs& a) {
    a.trials_opt = sub->add_option("--trials", a.trials, "Random drops per point");
    a.seed_opt = sub->add_option("--seed", a.seed, "Base seed");
    a.schemes_opt = sub->add_option("--schemes", a.schemes, "Schemes (comma separated)")->delimiter(',');
    a.eps_opt = sub->add_option("--pairing-eps", a.pairing_eps, "Pairing bisection tolerance")->capture_default_str();
    a.threads_opt = sub->add_option("--threads", a.threads, "Worker threads (0 = all cores)");
    a.k_opt = sub->add_option("--k", a.k, "Users per drop");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uplink sum-rate allocation for RSMA, NOMA, FDMA and TDMA"};
    app.require_subcommand(1);

    RegionArgs region;
    auto* region_cmd = app.add_subcommand("region", "Trace two-user rate-region frontiers (CSV)");
    add_common(region_cmd, region.common);
    region.grid_opt = region_cmd->add_option("--grid-points", region.grid_points, "Points per frontier")
                          ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))
                          ->capture_default_str();

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve one scenario for every scheme (JSON)");
    add_common(solve_cmd, solve.common);
    solve.schemes_opt = solve_cmd->add_option("--schemes", solve.schemes, "Schemes (comma separated)")->delimiter(',');
    solve.recover_opt = solve_cmd->add_flag("--recover-order{true},!--no-recover", solve.recover,
                                            "Recover RSMA decoding order and split powers (K <= 4)");
    solve.no_recover_opt = solve.recover_opt;
    add_sca_flags(solve_cmd, solve);
    solve.eps_opt = solve_cmd->add_option("--pairing-eps", solve.pairing_eps, "Pairing bisection tolerance")
                        ->capture_default_str();
    solve.tau_tol_opt =
        solve_cmd->add_option("--tau-tol", solve.tau_tol, "NOMA/FDMA bisection tolerance")->capture_default_str();

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo parameter sweep (CSV)");
    add_common(sweep_cmd, sweep.common);
    sweep.axis_opt = sweep_cmd->add_option("--axis", sweep.axis, "p_max_dbm | bandwidth_hz | d2_weight | k_users");
    sweep.values_opt = sweep_cmd->add_option("--values", sweep.values, "Axis values (comma separated)")->delimiter(',');
    add_sweep_flags(sweep_cmd, sweep);

    SweepArgs cdf;
    auto* cdf_cmd = app.add_subcommand("cdf", "Empirical sum-rate CDFs over random drops (CSV)");
    add_common(cdf_cmd, cdf.common);
    add_sweep_flags(cdf_cmd, cdf);

    CLI11_PARSE(app, argc, argv);

    try {
        if (region_cmd->parsed()) return cmd_region(region);
        if (solve_cmd->parsed()) return cmd_solve(solve);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep);
        if (cdf_cmd->parsed()) return cmd_cdf(cdf);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
