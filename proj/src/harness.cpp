#include "fmoe/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "fmoe/boosting.hpp"
#include "fmoe/covariance.hpp"
#include "fmoe/rng.hpp"
#include "fmoe/sampling.hpp"
#include "fmoe/spaces/euclidean.hpp"
#include "fmoe/spaces/poincare.hpp"
#include "fmoe/spaces/spider.hpp"

namespace fmoe::harness {

namespace {

constexpr double disk_inlier_sd = 0.2;
constexpr int spider_legs = 5;

constexpr const char* replication_header = "experiment,replication,base_error,fmoe_error,flags";
constexpr const char* summary_header =
    "experiment,n,k,sims,mse_base,mse_fmoe,ci_base_lo,ci_base_hi,ci_fmoe_lo,ci_fmoe_hi,floor_violation_rate";

struct FlagName {
    Flag flag;
    const char* name;
};

constexpr FlagName flag_names[] = {
    {flag_failed, "failed"},
    {flag_base_nonconverged, "base_nonconverged"},
    {flag_median_nonconverged, "median_nonconverged"},
    {flag_floor_violation, "floor_violation"},
    {flag_support_violation, "support_violation"},
};

bool is_covariance(Experiment e) { return e == Experiment::cov_ai || e == Experiment::cov_bw; }
bool uses_alpha(Experiment e) { return e == Experiment::spider5 || e == Experiment::poincare; }

std::uint64_t solver_seed(const ExperimentConfig& config, int replication) {
    return config.master_seed ^ (static_cast<std::uint64_t>(replication + 1) << 32);
}

template <class S>
frechet::SolverResult<PointOf<S>> pooled_estimate(const S& space, std::span<const PointOf<S>> data,
                                                  const ExperimentConfig& config, std::uint64_t seed) {
    if (config.base == BaseEstimator::inductive_mean) {
        return {frechet::inductive_mean(space, data), 0.0, 0, true, {}};
    }
    auto sample = frechet::WeightedSample<PointOf<S>>::uniform({data.begin(), data.end()});
    return frechet::empirical_frechet_mean(space, sample, config.solver, seed);
}

// Spider and disk: inductive (or empirical Fréchet) mean of all points
// against the median of the block means; the target is the symmetric center.
template <class S>
ReplicationResult run_mean_experiment(const S& space, const std::vector<PointOf<S>>& data, const PointOf<S>& target,
                                      const ExperimentConfig& config, int replication) {
    ReplicationResult out;
    out.replication = replication;
    const std::uint64_t seed = solver_seed(config, replication);
    const std::span<const PointOf<S>> all(data);

    const auto base = pooled_estimate(space, all, config, seed);
    if (!base.converged) out.flags |= flag_base_nonconverged;
    out.base_error = space.distance(base.point, target);

    boosting::BoostConfig bc;
    bc.k = config.k;
    bc.alpha = boosting::mean_alpha;
    bool blocks_converged = true;
    const auto boosted = boosting::boost(
        space, all,
        [&](std::span<const PointOf<S>> block, std::uint64_t block_seed) {
            auto r = pooled_estimate(space, block, config, block_seed);
            if (!r.converged) blocks_converged = false;
            return r.point;
        },
        bc, config.solver, seed);
    if (!blocks_converged) out.flags |= flag_base_nonconverged;
    if (!boosted.median_converged) out.flags |= flag_median_nonconverged;
    out.fmoe_error = space.distance(boosted.estimate, target);
    return out;
}

template <class S>
ReplicationResult run_covariance_experiment(const S& space, const Eigen::MatrixXd& samples,
                                            const spaces::SpdMatrix& target, std::optional<double> lambda0,
                                            const ExperimentConfig& config, int replication) {
    ReplicationResult out;
    out.replication = replication;
    const std::uint64_t seed = solver_seed(config, replication);

    const auto pooled = covariance::sample_covariance(samples, lambda0);
    out.base_error = space.distance(spaces::SpdMatrix(pooled.matrix), target);

    boosting::BoostConfig bc;
    bc.k = config.k;
    bc.alpha = boosting::covariance_alpha;
    const auto boosted = boosting::boost(
        space, static_cast<std::size_t>(samples.cols()),
        [&](std::span<const std::size_t> idx, std::uint64_t) {
            // Blocks are contiguous column ranges.
            const auto first = static_cast<Eigen::Index>(idx.front());
            const auto cols = static_cast<Eigen::Index>(idx.size());
            return spaces::SpdMatrix(covariance::sample_covariance(samples.middleCols(first, cols)).matrix);
        },
        bc, config.solver, seed, boosting::SupportPolicy::flag);
    if (!boosted.median_converged) out.flags |= flag_median_nonconverged;
    if (boosted.support_satisfied == false) out.flags |= flag_support_violation;
    if (lambda0) {
        out.blocks = config.k;
        out.floor_violations = static_cast<int>(
            std::count_if(boosted.block_estimates.begin(), boosted.block_estimates.end(),
                          [&](const spaces::SpdMatrix& m) { return !(m.smallest_eigenvalue() >= *lambda0); }));
        if (out.floor_violations > 0) out.flags |= flag_floor_violation;
    }
    out.fmoe_error = space.distance(boosted.estimate, target);
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path.string() + " for writing: " + std::strerror(errno));
    f << text;
    f.flush();
    if (!f) throw IoError("failed writing " + path.string());
}

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& path, const std::string& header) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for reading: " + std::strerror(errno));
    std::string line;
    if (!std::getline(f, line) || line != header) {
        throw IoError(path.string() + ": unexpected header");
    }
    std::vector<std::vector<std::string>> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw IoError("malformed number '" + s + "'");
    return v;
}

long long parse_integer(const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw IoError("malformed integer '" + s + "'");
    return v;
}

std::string summary_row(const SummaryStats& s) {
    std::string row = s.experiment + "," + std::to_string(s.n) + "," + std::to_string(s.k) + "," +
                      std::to_string(s.sims);
    for (double v : {s.mse_base, s.mse_fmoe, s.ci_base.lo, s.ci_base.hi, s.ci_fmoe.lo, s.ci_fmoe.hi,
                     s.floor_violation_rate}) {
        row += "," + format_number(v);
    }
    return row + "\n";
}

}  // namespace

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::spider5: return "spider5";
        case Experiment::poincare: return "poincare";
        case Experiment::cov_ai: return "cov_ai";
        case Experiment::cov_bw: return "cov_bw";
        case Experiment::euclidean_demo: return "euclidean_demo";
    }
    return "unknown";
}

Experiment parse_experiment(const std::string& name) {
    for (auto e : {Experiment::spider5, Experiment::poincare, Experiment::cov_ai, Experiment::cov_bw,
                   Experiment::euclidean_demo}) {
        if (to_string(e) == name) return e;
    }
    throw ConfigError("unknown experiment '" + name +
                      "' (expected spider5, poincare, cov_ai, cov_bw or euclidean_demo)");
}

ExperimentConfig ExperimentConfig::defaults(Experiment e) {
    ExperimentConfig c;
    c.experiment = e;
    switch (e) {
        case Experiment::spider5:
            c.alpha_outlier = 0.1;
            break;
        case Experiment::poincare:
            c.alpha_outlier = 0.1;
            c.k = 50;
            break;
        case Experiment::cov_ai:
        case Experiment::cov_bw:
            c.nu = 2.5;
            c.dimension = 10;
            c.n = 100000;
            c.k = 5;
            c.solver.max_iterations = 500;
            c.solver.displacement_tolerance = 1e-7;
            break;
        case Experiment::euclidean_demo:
            c.nu = 2.5;
            c.dimension = 2;
            break;
    }
    return c;
}

void ExperimentConfig::validate() const {
    if (n < 1) throw ConfigError("n must be at least 1");
    if (k < 1) throw ConfigError("k must be at least 1");
    if (static_cast<std::size_t>(k) > n) {
        throw ConfigError("block count k=" + std::to_string(k) + " exceeds sample size n=" + std::to_string(n));
    }
    if (sims < 1) throw ConfigError("sims must be at least 1");
    if (threads < 1) throw ConfigError("threads must be at least 1");
    if (uses_alpha(experiment)) {
        if (!alpha_outlier) throw ConfigError(to_string(experiment) + " needs an outlier fraction (--alpha)");
        if (!(*alpha_outlier >= 0.0 && *alpha_outlier <= 1.0)) {
            throw ConfigError("outlier fraction must lie in [0, 1]");
        }
    } else {
        if (!nu) throw ConfigError(to_string(experiment) + " needs degrees of freedom (--nu)");
        if (!(*nu > 2.0)) throw ConfigError("nu must exceed 2 for a finite covariance");
        if (dimension < 1) throw ConfigError("dimension must be at least 1");
    }
    if (is_covariance(experiment) && n / static_cast<std::size_t>(k) < static_cast<std::size_t>(dimension)) {
        throw ConfigError("blocks of n/k=" + std::to_string(n / static_cast<std::size_t>(k)) +
                          " points are singular in dimension " + std::to_string(dimension));
    }
    try {
        solver.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::string flags_to_string(unsigned flags) {
    std::string out;
    for (const auto& f : flag_names) {
        if (flags & f.flag) {
            if (!out.empty()) out += "|";
            out += f.name;
        }
    }
    return out.empty() ? "none" : out;
}

unsigned flags_from_string(const std::string& text) {
    if (text == "none") return 0;
    unsigned flags = 0;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, '|')) {
        const auto* it = std::find_if(std::begin(flag_names), std::end(flag_names),
                                      [&](const FlagName& f) { return part == f.name; });
        if (it == std::end(flag_names)) throw IoError("unknown flag '" + part + "'");
        flags |= it->flag;
    }
    return flags;
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level must lie in [0, 1]");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

SummaryStats summarize(std::span<const ReplicationResult> results) {
    if (results.empty()) throw std::invalid_argument("summarize needs at least one replication");
    std::vector<double> base, fmoe;
    SummaryStats s;
    long long violations = 0, blocks = 0;
    for (const auto& r : results) {
        if (r.failed()) {
            ++s.failed;
            continue;
        }
        base.push_back(r.base_error);
        fmoe.push_back(r.fmoe_error);
        violations += r.floor_violations;
        blocks += r.blocks;
    }
    if (base.empty()) throw std::invalid_argument("every replication failed");

    // Sorting first makes the sums independent of replication order.
    std::sort(base.begin(), base.end());
    std::sort(fmoe.begin(), fmoe.end());
    auto mse = [](const std::vector<double>& e) {
        double total = 0.0;
        for (double x : e) total += x * x;
        return total / static_cast<double>(e.size());
    };
    s.sims = static_cast<int>(base.size());
    s.mse_base = mse(base);
    s.mse_fmoe = mse(fmoe);
    s.ci_base = {quantile_sorted(base, 0.025), quantile_sorted(base, 0.975)};
    s.ci_fmoe = {quantile_sorted(fmoe, 0.025), quantile_sorted(fmoe, 0.975)};
    s.floor_violation_rate = blocks > 0 ? static_cast<double>(violations) / static_cast<double>(blocks) : 0.0;
    return s;
}

spaces::SpdMatrix campaign_sigma(const ExperimentConfig& config) {
    RngStream rng(config.master_seed, 0);
    return sampling::generate_spd_with_spectrum(Eigen::VectorXd::LinSpaced(config.dimension, 1.0, config.dimension),
                                                rng);
}

namespace {

ReplicationResult run_replication_with(const ExperimentConfig& config, int replication,
                                       const std::optional<spaces::SpdMatrix>& sigma) {
    RngStream rng(config.master_seed, static_cast<std::uint64_t>(replication) + 1);
    switch (config.experiment) {
        case Experiment::spider5: {
            sampling::SpiderMixtureParams params;
            params.legs = spider_legs;
            params.alpha_outlier = *config.alpha_outlier;
            const spaces::Spider space(spider_legs);
            const auto data = sampling::sample_spider_mixture(params, config.n, rng);
            return run_mean_experiment(space, data, spaces::SpiderPoint{}, config, replication);
        }
        case Experiment::poincare: {
            const spaces::PoincareDisk space;
            const auto data = sampling::sample_disk_mixture(*config.alpha_outlier, disk_inlier_sd, config.n, rng);
            return run_mean_experiment(space, data, spaces::DiskPoint{}, config, replication);
        }
        case Experiment::euclidean_demo: {
            const spaces::Euclidean space(config.dimension);
            const auto identity = spaces::SpdMatrix(Eigen::MatrixXd::Identity(config.dimension, config.dimension));
            const Eigen::MatrixXd draws = sampling::sample_multivariate_t(*config.nu, identity, config.n, rng);
            std::vector<Eigen::VectorXd> data;
            data.reserve(config.n);
            for (Eigen::Index i = 0; i < draws.cols(); ++i) data.emplace_back(draws.col(i));
            return run_mean_experiment(space, data, Eigen::VectorXd::Zero(config.dimension).eval(), config,
                                       replication);
        }
        case Experiment::cov_ai:
        case Experiment::cov_bw: {
            const double scale = *config.nu / (*config.nu - 2.0);
            const auto target = spaces::SpdMatrix(scale * sigma->matrix());
            const Eigen::MatrixXd samples = sampling::sample_multivariate_t(*config.nu, *sigma, config.n, rng);
            if (config.experiment == Experiment::cov_ai) {
                const spaces::SpdAffineInvariant space(config.dimension);
                return run_covariance_experiment(space, samples, target, std::nullopt, config, replication);
            }
            const double lambda0 = target.smallest_eigenvalue() / 2.0;
            const spaces::SpdBuresWasserstein space(config.dimension, lambda0);
            return run_covariance_experiment(space, samples, target, lambda0, config, replication);
        }
    }
    throw ConfigError("unknown experiment");
}

}  // namespace

ReplicationResult run_replication(const ExperimentConfig& config, int replication) {
    config.validate();
    std::optional<spaces::SpdMatrix> sigma;
    if (is_covariance(config.experiment)) sigma = campaign_sigma(config);
    return run_replication_with(config, replication, sigma);
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::optional<spaces::SpdMatrix> sigma;
    if (is_covariance(config.experiment)) sigma = campaign_sigma(config);

    const auto sims = static_cast<std::size_t>(config.sims);
    std::vector<ReplicationResult> results(sims);
    std::atomic<std::size_t> next{0};
    std::atomic<int> done{0};
    std::mutex progress_mutex;
    const std::string name = to_string(config.experiment);

    auto worker = [&] {
        for (std::size_t r = next++; r < sims; r = next++) {
            const int id = static_cast<int>(r);
            try {
                results[r] = run_replication_with(config, id, sigma);
            } catch (const std::exception& e) {
                ReplicationResult failed;
                failed.replication = id;
                failed.base_error = std::numeric_limits<double>::quiet_NaN();
                failed.fmoe_error = std::numeric_limits<double>::quiet_NaN();
                failed.flags = flag_failed;
                failed.error_message = e.what();
                results[r] = std::move(failed);
            }
            const int finished = ++done;
            if (config.progress) {
                std::lock_guard lock(progress_mutex);
                std::fprintf(stderr, "\r%s: %d/%d", name.c_str(), finished, config.sims);
                if (finished == config.sims) std::fputc('\n', stderr);
                std::fflush(stderr);
            }
        }
    };

    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.threads), sims);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    ExperimentOutput out;
    out.replications = std::move(results);
    try {
        out.stats = summarize(out.replications);
    } catch (const std::invalid_argument&) {
        out.stats.failed = config.sims;
        out.stats.mse_base = out.stats.mse_fmoe = std::numeric_limits<double>::quiet_NaN();
        out.stats.ci_base = out.stats.ci_fmoe = {out.stats.mse_base, out.stats.mse_base};
        out.stats.floor_violation_rate = out.stats.mse_base;
    }
    out.stats.experiment = name;
    out.stats.n = config.n;
    out.stats.k = config.k;
    return out;
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit_csv(const SummaryStats& stats, std::span<const ReplicationResult> results,
              const std::filesystem::path& path) {
    std::string body = std::string(replication_header) + "\n";
    for (const auto& r : results) {
        body += stats.experiment + "," + std::to_string(r.replication) + "," + format_number(r.base_error) + "," +
                format_number(r.fmoe_error) + "," + flags_to_string(r.flags) + "\n";
    }
    write_text(path, body);
    emit_summary_csv(std::span<const SummaryStats>(&stats, 1), path.string() + ".summary");
}

void emit_summary_csv(std::span<const SummaryStats> rows, const std::filesystem::path& path) {
    std::string body = std::string(summary_header) + "\n";
    for (const auto& s : rows) body += summary_row(s);
    write_text(path, body);
}

void emit_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path& path) {
    std::string body = "param," + std::string(summary_header) + "\n";
    for (const auto& r : rows) body += format_number(r.param) + "," + summary_row(r.stats);
    write_text(path, body);
}

std::vector<ReplicationResult> read_replications_csv(const std::filesystem::path& path) {
    std::vector<ReplicationResult> out;
    for (const auto& cells : read_rows(path, replication_header)) {
        if (cells.size() != 5) throw IoError(path.string() + ": expected 5 columns");
        ReplicationResult r;
        r.replication = static_cast<int>(parse_integer(cells[1]));
        r.base_error = parse_double(cells[2]);
        r.fmoe_error = parse_double(cells[3]);
        r.flags = flags_from_string(cells[4]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<SummaryStats> read_summary_csv(const std::filesystem::path& path) {
    std::vector<SummaryStats> out;
    for (const auto& cells : read_rows(path, summary_header)) {
        if (cells.size() != 11) throw IoError(path.string() + ": expected 11 columns");
        SummaryStats s;
        s.experiment = cells[0];
        s.n = static_cast<std::size_t>(parse_integer(cells[1]));
        s.k = static_cast<int>(parse_integer(cells[2]));
        s.sims = static_cast<int>(parse_integer(cells[3]));
        s.mse_base = parse_double(cells[4]);
        s.mse_fmoe = parse_double(cells[5]);
        s.ci_base = {parse_double(cells[6]), parse_double(cells[7])};
        s.ci_fmoe = {parse_double(cells[8]), parse_double(cells[9])};
        s.floor_violation_rate = parse_double(cells[10]);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace fmoe::harness
