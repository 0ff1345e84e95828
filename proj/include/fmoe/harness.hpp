#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmoe/frechet.hpp"
#include "fmoe/spaces/spd.hpp"

namespace fmoe::harness {

/// Invalid experiment configuration (CLI exit code 1).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// File could not be read or written (CLI exit code 2).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Experiment { spider5, poincare, cov_ai, cov_bw, euclidean_demo };

std::string to_string(Experiment e);
Experiment parse_experiment(const std::string& name);

enum class BaseEstimator { inductive_mean, empirical_mean };

struct ExperimentConfig {
    Experiment experiment = Experiment::spider5;
    std::size_t n = 100;
    int k = 10;
    int sims = 1000;
    /// Outlier fraction (spider5, poincare).
    std::optional<double> alpha_outlier;
    /// Degrees of freedom of the t population (cov_ai, cov_bw, euclidean_demo).
    std::optional<double> nu;
    int dimension = 10;
    std::uint64_t master_seed = 0;
    std::string output_path;
    int threads = 1;
    /// Report a replication counter on stderr.
    bool progress = false;
    /// Pooled and per-block estimator for the spider and disk experiments.
    BaseEstimator base = BaseEstimator::inductive_mean;
    frechet::SolverSettings solver;

    /// Paper-scale defaults for the experiment.
    static ExperimentConfig defaults(Experiment e);

    /// Throws ConfigError.
    void validate() const;
};

enum Flag : unsigned {
    flag_failed = 1u << 0,
    flag_base_nonconverged = 1u << 1,
    flag_median_nonconverged = 1u << 2,
    flag_floor_violation = 1u << 3,
    flag_support_violation = 1u << 4,
};

/// "none" or the set flags joined by '|'.
std::string flags_to_string(unsigned flags);
unsigned flags_from_string(const std::string& text);

struct ReplicationResult {
    int replication = 0;
    double base_error = 0;
    double fmoe_error = 0;
    unsigned flags = 0;
    /// Block estimates below the eigenvalue floor, out of `blocks` (cov_bw only).
    int floor_violations = 0;
    int blocks = 0;
    std::string error_message;

    bool failed() const { return (flags & flag_failed) != 0; }
};

struct Interval {
    double lo = 0;
    double hi = 0;
};

struct SummaryStats {
    std::string experiment;
    std::size_t n = 0;
    int k = 0;
    int sims = 0;
    double mse_base = 0;
    double mse_fmoe = 0;
    Interval ci_base;
    Interval ci_fmoe;
    double floor_violation_rate = 0;
    /// Replications excluded from the statistics because they failed.
    int failed = 0;
};

/// Linear-interpolation quantile of sorted data (the h = (m−1)q rule).
double quantile_sorted(std::span<const double> sorted, double q);

/// MSE and 2.5%/97.5% error quantiles over the successful replications;
/// `sims` counts those replications. Throws std::invalid_argument if no
/// replication succeeded.
SummaryStats summarize(std::span<const ReplicationResult> results);

struct ExperimentOutput {
    SummaryStats stats;
    std::vector<ReplicationResult> replications;
};

/// Σ for the covariance experiments: eigenvalues 1..d, Haar eigenvectors,
/// drawn from stream 0 of the master seed.
spaces::SpdMatrix campaign_sigma(const ExperimentConfig& config);

/// One replication (index r uses RNG stream r+1). Failures propagate.
ReplicationResult run_replication(const ExperimentConfig& config, int replication);

/// All replications (in parallel when threads > 1) and their summary. A
/// failing replication is recorded with the failed flag and does not abort
/// the campaign.
ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Writes `path` (per-replication rows) and `path.summary`. Throws IoError.
void emit_csv(const SummaryStats& stats, std::span<const ReplicationResult> results,
              const std::filesystem::path& path);

/// Summary rows for several campaigns under one header. Throws IoError.
void emit_summary_csv(std::span<const SummaryStats> rows, const std::filesystem::path& path);

/// One campaign of a sweep, keyed by its population parameter (outlier
/// fraction, or ν for the t experiments).
struct SweepRow {
    double param;
    SummaryStats stats;
};

/// `param` followed by the summary columns, one row per campaign.
void emit_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path& path);

std::vector<ReplicationResult> read_replications_csv(const std::filesystem::path& path);
std::vector<SummaryStats> read_summary_csv(const std::filesystem::path& path);

/// %.17g rendering used in every CSV field.
std::string format_number(double x);

}  // namespace fmoe::harness
