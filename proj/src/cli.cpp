#include "fmoe/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fmoe/boosting.hpp"
#include "fmoe/harness.hpp"

namespace fmoe {

namespace {

using harness::ConfigError;
using harness::ExperimentConfig;
using harness::IoError;
using nlohmann::json;

struct RunFlags {
    std::string experiment;
    std::size_t n = 0;
    int k = 0;
    double alpha = 0;
    double nu = 0;
    int dim = 0;
    int sims = 0;
    std::uint64_t seed = 0;
    std::string out;
    int threads = 1;
    std::string config_path;
    std::string base;
    bool quiet = false;
    std::vector<int> k_list;
    std::vector<double> alpha_list;

    CLI::Option* experiment_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* k_opt = nullptr;
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* nu_opt = nullptr;
    CLI::Option* dim_opt = nullptr;
    CLI::Option* sims_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* threads_opt = nullptr;
    CLI::Option* base_opt = nullptr;
    CLI::Option* k_list_opt = nullptr;
    CLI::Option* alpha_list_opt = nullptr;
};

void add_run_options(CLI::App& cmd, RunFlags& f) {
    f.experiment_opt = cmd.add_option("--experiment", f.experiment, "spider5, poincare, cov_ai, cov_bw or euclidean_demo");
    f.n_opt = cmd.add_option("--n", f.n, "sample size per replication");
    f.k_opt = cmd.add_option("--k", f.k, "number of blocks");
    f.alpha_opt = cmd.add_option("--alpha", f.alpha, "outlier fraction (spider5, poincare)");
    f.nu_opt = cmd.add_option("--nu", f.nu, "t degrees of freedom (cov_ai, cov_bw, euclidean_demo)");
    f.dim_opt = cmd.add_option("--dim", f.dim, "dimension (cov_ai, cov_bw, euclidean_demo)");
    f.sims_opt = cmd.add_option("--sims", f.sims, "number of replications");
    f.seed_opt = cmd.add_option("--seed", f.seed, "master seed");
    f.out_opt = cmd.add_option("--out", f.out, "output CSV path");
    f.threads_opt = cmd.add_option("--threads", f.threads, "worker threads across replications");
    cmd.add_option("--config", f.config_path, "JSON config file; flags override its values");
    f.base_opt = cmd.add_option("--base", f.base, "pooled/block estimator: inductive or empirical");
    cmd.add_flag("--quiet", f.quiet, "no progress counter on stderr");
}

json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }
}

template <class T>
T get_as(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

harness::BaseEstimator parse_base(const std::string& s) {
    if (s == "inductive") return harness::BaseEstimator::inductive_mean;
    if (s == "empirical") return harness::BaseEstimator::empirical_mean;
    throw ConfigError("unknown base estimator '" + s + "' (expected inductive or empirical)");
}

void apply_json(const json& j, ExperimentConfig& c, RunFlags& f) {
    static const std::vector<std::string> known{"schema",        "experiment", "n",           "k",
                                                "sims",          "alpha_outlier", "nu",       "dimension",
                                                "master_seed",   "output_path", "threads",    "base_estimator",
                                                "solver",        "k_list",     "alpha_list"};
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    if (!j.contains("schema") || get_as<int>(j, "schema") != 1) {
        throw ConfigError("config must declare \"schema\": 1");
    }
    if (j.contains("n")) c.n = get_as<std::size_t>(j, "n");
    if (j.contains("k")) c.k = get_as<int>(j, "k");
    if (j.contains("sims")) c.sims = get_as<int>(j, "sims");
    if (j.contains("alpha_outlier")) c.alpha_outlier = get_as<double>(j, "alpha_outlier");
    if (j.contains("nu")) c.nu = get_as<double>(j, "nu");
    if (j.contains("dimension")) c.dimension = get_as<int>(j, "dimension");
    if (j.contains("master_seed")) c.master_seed = get_as<std::uint64_t>(j, "master_seed");
    if (j.contains("output_path")) c.output_path = get_as<std::string>(j, "output_path");
    if (j.contains("threads")) c.threads = get_as<int>(j, "threads");
    if (j.contains("base_estimator")) c.base = parse_base(get_as<std::string>(j, "base_estimator"));
    if (j.contains("k_list")) f.k_list = get_as<std::vector<int>>(j, "k_list");
    if (j.contains("alpha_list")) f.alpha_list = get_as<std::vector<double>>(j, "alpha_list");
    if (j.contains("solver")) {
        const json& s = j.at("solver");
        if (!s.is_object()) throw ConfigError("config key 'solver' must be an object");
        for (const auto& [key, value] : s.items()) {
            if (key == "max_iterations") c.solver.max_iterations = get_as<int>(s, "max_iterations");
            else if (key == "step_constant") c.solver.step_constant = get_as<double>(s, "step_constant");
            else if (key == "objective_tolerance") c.solver.objective_tolerance = get_as<double>(s, "objective_tolerance");
            else if (key == "displacement_tolerance") c.solver.displacement_tolerance = get_as<double>(s, "displacement_tolerance");
            else throw ConfigError("unknown solver key '" + key + "'");
        }
    }
}

ExperimentConfig resolve_config(RunFlags& f) {
    std::optional<json> j;
    if (!f.config_path.empty()) j = load_json(f.config_path);

    harness::Experiment experiment = harness::Experiment::spider5;
    if (*f.experiment_opt) {
        experiment = harness::parse_experiment(f.experiment);
    } else if (j && j->contains("experiment")) {
        experiment = harness::parse_experiment(get_as<std::string>(*j, "experiment"));
    }
    auto c = ExperimentConfig::defaults(experiment);
    if (j) apply_json(*j, c, f);

    if (*f.n_opt) c.n = f.n;
    if (*f.k_opt) c.k = f.k;
    if (*f.alpha_opt) c.alpha_outlier = f.alpha;
    if (*f.nu_opt) c.nu = f.nu;
    if (*f.dim_opt) c.dimension = f.dim;
    if (*f.sims_opt) c.sims = f.sims;
    if (*f.seed_opt) c.master_seed = f.seed;
    if (*f.out_opt) c.output_path = f.out;
    if (*f.threads_opt) c.threads = f.threads;
    if (*f.base_opt) c.base = parse_base(f.base);
    if (c.output_path.empty()) c.output_path = harness::to_string(c.experiment) + ".csv";
    c.progress = !f.quiet;
    return c;
}

void report(std::ostream& out, std::ostream& err, const harness::ExperimentOutput& result,
            const std::optional<double>& alpha) {
    const auto& s = result.stats;
    out << s.experiment << " n=" << s.n << " k=" << s.k;
    if (alpha) out << " alpha=" << *alpha;
    out << " sims=" << s.sims << " mse_base=" << harness::format_number(s.mse_base)
        << " mse_fmoe=" << harness::format_number(s.mse_fmoe) << "\n";
    if (s.failed > 0) err << "warning: " << s.failed << " replication(s) failed and were excluded\n";
}

int run_command(RunFlags& f, std::ostream& out, std::ostream& err) {
    const auto config = resolve_config(f);
    config.validate();
    const auto result = harness::run_experiment(config);
    harness::emit_csv(result.stats, result.replications, config.output_path);
    report(out, err, result, config.alpha_outlier);
    return 0;
}

int sweep_command(RunFlags& f, std::ostream& out, std::ostream& err) {
    auto base = resolve_config(f);
    if (f.k_list.empty()) f.k_list = {base.k};
    const bool alpha_experiment = base.experiment == harness::Experiment::spider5 ||
                                  base.experiment == harness::Experiment::poincare;
    if (!f.alpha_list.empty() && !alpha_experiment) {
        throw ConfigError("--alpha-list only applies to spider5 and poincare");
    }
    std::vector<std::optional<double>> alphas;
    if (f.alpha_list.empty()) {
        alphas.push_back(base.alpha_outlier);
    } else {
        for (double a : f.alpha_list) alphas.emplace_back(a);
    }

    std::vector<ExperimentConfig> configs;
    for (const auto& a : alphas) {
        for (int k : f.k_list) {
            auto c = base;
            c.alpha_outlier = a;
            c.k = k;
            c.validate();
            configs.push_back(c);
        }
    }

    std::vector<harness::SweepRow> rows;
    for (const auto& c : configs) {
        const auto result = harness::run_experiment(c);
        report(out, err, result, c.alpha_outlier);
        rows.push_back({c.alpha_outlier ? *c.alpha_outlier : *c.nu, result.stats});
    }
    harness::emit_sweep_csv(rows, base.output_path);
    return 0;
}

int constants_command(double alpha, double p, double delta, std::ostream& out) {
    const auto c = boosting::ConcentrationConstants::of(alpha, p);
    out << "psi=" << harness::format_number(c.psi) << "\n";
    out << "c_alpha=" << harness::format_number(c.c_alpha) << "\n";
    out << "k=" << boosting::select_block_count(delta, alpha, p) << "\n";
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Frechet median-of-estimators benchmarks"};
    app.name("fmoe-bench");
    app.require_subcommand(1);

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "run one Monte Carlo campaign");
    add_run_options(*run, run_flags);

    RunFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "run campaigns over a grid of k and outlier fractions");
    add_run_options(*sweep, sweep_flags);
    sweep_flags.k_list_opt = sweep->add_option("--k-list", sweep_flags.k_list, "block counts")->delimiter(',');
    sweep_flags.alpha_list_opt =
        sweep->add_option("--alpha-list", sweep_flags.alpha_list, "outlier fractions")->delimiter(',');

    double alpha = boosting::mean_alpha, p = boosting::default_p, delta = 0.05;
    auto* constants = app.add_subcommand("constants", "print psi, C_alpha and the block count");
    constants->add_option("--alpha", alpha, "median breakdown fraction in (0, 0.5)");
    constants->add_option("--p", p, "block failure probability in (0, alpha)");
    constants->add_option("--delta", delta, "target failure probability in (0, 1]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        if (*run) return run_command(run_flags, out, err);
        if (*sweep) return sweep_command(sweep_flags, out, err);
        return constants_command(alpha, p, delta, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace fmoe
