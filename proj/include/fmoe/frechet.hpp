#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "fmoe/geometry.hpp"
#include "fmoe/rng.hpp"
#include "fmoe/spaces/sphere.hpp"

namespace fmoe::frechet {

/// Iteration controls for the proximal-point and Weiszfeld solvers. The
/// proximal schedules use λ_s = step_constant / s at sweep s.
struct SolverSettings {
    int max_iterations = 2000;
    double step_constant = 1.0;
    double objective_tolerance = 1e-10;
    double displacement_tolerance = 1e-10;

    void validate() const {
        if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
        if (!(step_constant > 0.0)) throw std::invalid_argument("step_constant must be positive");
        if (!(objective_tolerance > 0.0)) throw std::invalid_argument("objective_tolerance must be positive");
        if (!(displacement_tolerance > 0.0)) throw std::invalid_argument("displacement_tolerance must be positive");
    }
};

/// Points with nonnegative weights normalized to sum to one.
template <class P>
class WeightedSample {
public:
    static WeightedSample uniform(std::vector<P> points) {
        const std::size_t m = points.size();
        return WeightedSample(std::move(points), std::vector<double>(m, m ? 1.0 / static_cast<double>(m) : 0.0));
    }

    static WeightedSample weighted(std::vector<P> points, std::vector<double> weights) {
        if (weights.size() != points.size()) {
            throw std::invalid_argument("weights and points differ in length");
        }
        double total = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be finite and nonnegative");
            total += w;
        }
        if (!(total > 0.0)) throw std::invalid_argument("weights must not all be zero");
        for (double& w : weights) w /= total;
        return WeightedSample(std::move(points), std::move(weights));
    }

    std::span<const P> points() const { return points_; }
    std::span<const double> weights() const { return weights_; }
    std::size_t size() const { return points_.size(); }

private:
    WeightedSample(std::vector<P> points, std::vector<double> weights)
        : points_(std::move(points)), weights_(std::move(weights)) {
        if (points_.empty()) throw std::invalid_argument("a weighted sample needs at least one point");
    }

    std::vector<P> points_;
    std::vector<double> weights_;
};

template <class P>
struct SolverResult {
    P point;
    double objective = 0;
    int iterations = 0;
    bool converged = false;
    /// Objective of the incumbent after the warm start and after each sweep;
    /// non-increasing.
    std::vector<double> objective_history;
};

/// Σ_j w_j d(x, x_j)^power for power ∈ {1, 2}.
template <GeodesicSpace S>
double frechet_objective(const S& space, const WeightedSample<PointOf<S>>& sample, const PointOf<S>& x, int power) {
    if (power != 1 && power != 2) throw std::invalid_argument("Frechet objective power must be 1 or 2");
    double total = 0.0;
    const auto pts = sample.points();
    const auto ws = sample.weights();
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const double d = space.distance(x, pts[j]);
        total += ws[j] * (power == 1 ? d : d * d);
    }
    return total;
}

/// s_1 = x_1, s_i = the point 1/i of the way from s_{i−1} to x_i. Depends on
/// the order of the points.
template <GeodesicSpace S>
PointOf<S> inductive_mean(const S& space, std::span<const PointOf<S>> points) {
    if (points.empty()) throw std::invalid_argument("inductive mean of an empty sequence");
    PointOf<S> s = points[0];
    for (std::size_t i = 1; i < points.size(); ++i) {
        s = space.interpolate(s, points[i], 1.0 / static_cast<double>(i + 1));
    }
    return s;
}

namespace detail {

inline std::vector<std::size_t> sweep_order(std::size_t m, std::uint64_t seed) {
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    RngStream rng(seed, 0);
    portable_shuffle(std::span<std::size_t>(order), rng);
    return order;
}

// Cyclic proximal-point driver. `step` maps (current, target, distance,
// weight, λ) to the proximal update toward one sample point and sets its
// last argument when the update lands exactly on the target.
template <GeodesicSpace S, class Step>
SolverResult<PointOf<S>> cyclic_proximal(const S& space, const WeightedSample<PointOf<S>>& sample,
                                         const SolverSettings& settings, std::uint64_t seed, int power, Step step) {
    settings.validate();
    const auto pts = sample.points();
    const auto ws = sample.weights();

    SolverResult<PointOf<S>> result{inductive_mean(space, pts), 0.0, 0, false, {}};
    result.objective = frechet_objective(space, sample, result.point, power);
    result.objective_history.push_back(result.objective);
    if (pts.size() == 1) {
        result.converged = true;
        return result;
    }

    const auto order = sweep_order(pts.size(), seed);
    PointOf<S> x = result.point;
    // A still sweep may be a fixed point of the sweep map for a whole range
    // of λ (an iterate bouncing across the center of a tree, or snapping
    // back onto a sample point), so convergence needs the iterate to stay
    // still, without snapping, while λ halves.
    int still_since = 0;
    for (int sweep = 1; sweep <= settings.max_iterations; ++sweep) {
        const double lambda = settings.step_constant / sweep;
        const PointOf<S> start = x;
        bool snapped = false;
        for (std::size_t j : order) {
            const double d = space.distance(x, pts[j]);
            if (d > 0.0) {
                x = step(x, pts[j], d, ws[j], lambda, snapped);
            } else {
                snapped = true;
            }
        }
        const double obj = frechet_objective(space, sample, x, power);
        if (obj < result.objective) {
            result.point = x;
            result.objective = obj;
        }
        result.objective_history.push_back(result.objective);
        result.iterations = sweep;
        const bool still = !snapped && space.distance(start, x) < settings.displacement_tolerance;
        if (!still) {
            still_since = 0;
        } else if (still_since == 0) {
            still_since = sweep;
        }
        if (still_since > 0 && sweep >= 2 * still_since) {
            result.converged = true;
            break;
        }
    }
    return result;
}

}  // namespace detail

/// Approximate minimizer of Σ w_j d²(x, x_j) by cyclic proximal-point sweeps
/// started at the inductive mean. At sweep s each point pulls the iterate a
/// fraction λ/(1+λ) of the way toward it, with λ = (c/s)·m·w_j (so λ = c/s
/// for uniform weights). The best iterate seen is returned; non-convergence
/// is reported through `converged`, not thrown.
template <GeodesicSpace S>
SolverResult<PointOf<S>> empirical_frechet_mean(const S& space, const WeightedSample<PointOf<S>>& sample,
                                                const SolverSettings& settings, std::uint64_t seed) {
    const double m = static_cast<double>(sample.size());
    return detail::cyclic_proximal(space, sample, settings, seed, 2,
                                   [&](const PointOf<S>& x, const PointOf<S>& target, double, double w, double lambda, bool&) {
                                       const double l = lambda * m * w;
                                       return space.interpolate(x, target, l / (1.0 + l));
                                   });
}

/// Approximate Fréchet median in a Hadamard space (κ ≤ 0) by the cyclic
/// proximal-point algorithm: at sweep s the proximal map of w_j d(·, x_j)
/// moves the iterate an arc length min(λ, d) toward x_j, with
/// λ = (c/s)·m·w_j as in empirical_frechet_mean.
///
/// Medians need not be unique, so callers should compare objectives rather
/// than points. After the sweeps every sample point is also tried as a
/// candidate, so the returned objective never exceeds the best sample point's
/// objective by more than objective_tolerance.
template <GeodesicSpace S>
SolverResult<PointOf<S>> frechet_median_npc(const S& space, const WeightedSample<PointOf<S>>& sample,
                                            const SolverSettings& settings, std::uint64_t seed) {
    const double m = static_cast<double>(sample.size());
    auto result = detail::cyclic_proximal(
        space, sample, settings, seed, 1,
        [&](const PointOf<S>& x, const PointOf<S>& target, double d, double w, double lambda, bool& snapped) {
            const double arc = lambda * m * w;
            if (arc >= d) {
                snapped = true;
                return target;
            }
            return space.interpolate(x, target, arc / d);
        });
    for (const auto& p : sample.points()) {
        const double obj = frechet_objective(space, sample, p, 1);
        if (obj < result.objective - settings.objective_tolerance) {
            result.point = p;
            result.objective = obj;
        }
    }
    if (!result.objective_history.empty() && result.objective < result.objective_history.back()) {
        result.objective_history.push_back(result.objective);
    }
    return result;
}

/// Geometric median on S² by Weiszfeld iterations in the tangent space at
/// the current estimate. A data point landing on the iterate is handled by
/// nudging the iterate 1e-9 along a fixed tangent direction. Throws
/// PreconditionError when the sample does not lie in the open ball of
/// radius π/2 about the returned point.
SolverResult<spaces::SpherePoint> frechet_median_sphere(const WeightedSample<spaces::SpherePoint>& sample,
                                                        const SolverSettings& settings);

}  // namespace fmoe::frechet
