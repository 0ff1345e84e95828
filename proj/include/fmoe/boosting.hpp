#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "fmoe/frechet.hpp"
#include "fmoe/geometry.hpp"
#include "fmoe/rng.hpp"
#include "fmoe/spaces/spd.hpp"
#include "fmoe/spaces/sphere.hpp"

namespace fmoe::boosting {

/// Concentration parameters of the median-of-estimators scheme: k blocks,
/// block estimators within ε with probability ≥ 1−p, and a median that
/// tolerates a fraction α of bad blocks.
struct BoostConfig {
    int k = 1;
    double alpha = 7.0 / 18.0;
    double p = 0.1;
    double delta = 0.05;
    /// Append the n mod k leftover points to the final block.
    bool assign_leftover = false;
    /// Permute the data indices (seeded) before blocking.
    bool shuffle_blocks = false;
    /// Worker threads for the block estimators; results do not depend on it.
    int threads = 1;

    void validate() const;
};

/// α and p presets for mean-type and covariance experiments.
inline constexpr double mean_alpha = 7.0 / 18.0;
inline constexpr double covariance_alpha = 0.4;
inline constexpr double default_p = 0.1;

struct ConcentrationConstants {
    double psi;
    double c_alpha;

    static ConcentrationConstants of(double alpha, double p);
};

struct BoundReport {
    double radius;
    double failure_probability;
};

/// ψ(α, p) = (1−α) log((1−α)/(1−p)) + α log(α/p) for 0 < p ≤ α < 1.
double psi(double alpha, double p);

/// C_α = (1−α)/√(1−2α) for α ∈ (0, ½).
double c_alpha(double alpha);

/// ⌊log(1/δ)/ψ(α, p)⌋ + 1, the smallest k with exp(−kψ) ≤ δ up to ties.
int select_block_count(double delta, double alpha, double p);

struct IndexRange {
    std::size_t begin;
    std::size_t end;

    std::size_t size() const { return end - begin; }
    bool operator==(const IndexRange&) const = default;
};

/// k contiguous ranges of ⌊n/k⌋ indices; the trailing n mod k indices are
/// dropped unless assign_leftover extends the last range to n.
std::vector<IndexRange> split_blocks(std::size_t n, std::size_t k, bool assign_leftover = false);

/// Radius C_α·ε (κ ≤ 0) or (π/2)·C_α·ε (κ > 0) with failure probability
/// exp(−kψ), divided by 1−p^k when conditional. For κ > 0, ε must be below
/// D_κ/(π·C_α).
BoundReport theoretical_bound(const BoostConfig& config, double epsilon, const CurvatureBound& curvature,
                              bool conditional);

/// 11·√(σ²·log(1.4/δ)/n), the high-probability radius of the median of
/// inductive means.
double fmom_radius(double sigma2, std::size_t n, double delta);

/// A block estimator threw; the original message is kept and the block
/// index attached.
class BlockFailure : public std::runtime_error {
public:
    BlockFailure(std::size_t block, const std::string& what)
        : std::runtime_error("block " + std::to_string(block) + ": " + what), block_(block) {}

    std::size_t block() const { return block_; }

private:
    std::size_t block_;
};

/// Positive-curvature space with no median algorithm available.
class UnsupportedSpace : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// What to do when a κ > 0 block estimate falls outside the ball of
/// radius D_κ/2 about the median.
enum class SupportPolicy { reject, flag };

template <class P>
struct BoostResult {
    P estimate;
    std::vector<P> block_estimates;
    bool median_converged = true;
    int median_iterations = 0;
    double median_objective = 0;
    /// Empty when κ ≤ 0; otherwise whether every block estimate lies within
    /// D_κ/2 of the estimate.
    std::optional<bool> support_satisfied;
};

namespace detail {

template <class Fn>
void for_each_block(std::size_t count, int threads, Fn&& fn) {
    std::vector<std::exception_ptr> errors(count);
    auto run = [&](std::size_t j) {
        try {
            fn(j);
        } catch (...) {
            errors[j] = std::current_exception();
        }
    };
    const std::size_t workers = std::min<std::size_t>(threads > 1 ? static_cast<std::size_t>(threads) : 1, count);
    if (workers <= 1) {
        for (std::size_t j = 0; j < count; ++j) run(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t j = next++; j < count; j = next++) run(j);
            });
        }
    }
    for (std::size_t j = 0; j < count; ++j) {
        if (!errors[j]) continue;
        try {
            std::rethrow_exception(errors[j]);
        } catch (const std::exception& e) {
            throw BlockFailure(j, e.what());
        } catch (...) {
            throw BlockFailure(j, "unknown error");
        }
    }
}

}  // namespace detail

/// Fréchet median of block estimates, dispatched on the curvature sign:
/// proximal point for κ ≤ 0, Weiszfeld on S², and proximal point for the
/// Bures–Wasserstein SPD space (uniquely geodesic, κ > 0). Other κ > 0
/// spaces throw UnsupportedSpace.
template <GeodesicSpace S>
BoostResult<PointOf<S>> median_of_estimates(const S& space, std::vector<PointOf<S>> estimates,
                                            const frechet::SolverSettings& settings, std::uint64_t seed,
                                            SupportPolicy policy = SupportPolicy::reject) {
    auto sample = frechet::WeightedSample<PointOf<S>>::uniform(estimates);
    frechet::SolverResult<PointOf<S>> med;
    if constexpr (std::is_same_v<S, spaces::Sphere>) {
        med = frechet::frechet_median_sphere(sample, settings);
    } else {
        if (space.curvature().positive() && !std::is_same_v<S, spaces::SpdBuresWasserstein>) {
            throw UnsupportedSpace("no Frechet median algorithm for this positively curved space");
        }
        med = frechet::frechet_median_npc(space, sample, settings, seed);
    }

    BoostResult<PointOf<S>> out{std::move(med.point), std::move(estimates), med.converged, med.iterations,
                                med.objective, std::nullopt};
    if (space.curvature().positive()) {
        const bool ok = validate_support_radius(space, std::span<const PointOf<S>>(out.block_estimates), out.estimate);
        if (!ok && policy == SupportPolicy::reject) {
            throw PreconditionError("block estimates do not lie within D_kappa/2 of their median");
        }
        out.support_satisfied = ok;
    }
    return out;
}

/// Median-of-estimators over n data points. `estimator(indices, block_seed)`
/// computes one block estimate from the given data indices; block j gets
/// seed ⊕ j. With k = 1 the single estimate is returned unchanged.
template <GeodesicSpace S, class BlockEstimator>
BoostResult<PointOf<S>> boost(const S& space, std::size_t n, BlockEstimator&& estimator, const BoostConfig& config,
                              const frechet::SolverSettings& settings, std::uint64_t seed,
                              SupportPolicy policy = SupportPolicy::reject) {
    config.validate();
    settings.validate();
    const auto k = static_cast<std::size_t>(config.k);
    const auto ranges = split_blocks(n, k, config.assign_leftover);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (config.shuffle_blocks) {
        RngStream rng(seed, 1);
        portable_shuffle(std::span<std::size_t>(order), rng);
    }

    std::vector<std::optional<PointOf<S>>> slots(k);
    detail::for_each_block(k, config.threads, [&](std::size_t j) {
        const std::span<const std::size_t> idx(order.data() + ranges[j].begin, ranges[j].size());
        slots[j].emplace(estimator(idx, seed ^ static_cast<std::uint64_t>(j)));
    });

    std::vector<PointOf<S>> estimates;
    estimates.reserve(k);
    for (auto& s : slots) estimates.push_back(std::move(*s));

    if (k == 1) {
        BoostResult<PointOf<S>> out{estimates.front(), std::move(estimates), true, 0, 0.0, std::nullopt};
        return out;
    }
    return median_of_estimates(space, std::move(estimates), settings, seed, policy);
}

/// Convenience overload: `base(block_data, block_seed)` receives the block's
/// data points in order.
template <GeodesicSpace S, class T, class Base>
BoostResult<PointOf<S>> boost(const S& space, std::span<const T> data, Base&& base, const BoostConfig& config,
                              const frechet::SolverSettings& settings, std::uint64_t seed,
                              SupportPolicy policy = SupportPolicy::reject) {
    return boost(
        space, data.size(),
        [&](std::span<const std::size_t> idx, std::uint64_t block_seed) {
            std::vector<T> block;
            block.reserve(idx.size());
            for (std::size_t i : idx) block.push_back(data[i]);
            return base(std::span<const T>(block), block_seed);
        },
        config, settings, seed, policy);
}

}  // namespace fmoe::boosting
