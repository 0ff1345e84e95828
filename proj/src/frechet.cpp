#include "fmoe/frechet.hpp"

#include <vector>

namespace fmoe::frechet {

namespace {

using spaces::Sphere;
using spaces::SpherePoint;

constexpr double coincidence_radius = 1e-12;
constexpr double nudge = 1e-9;

Eigen::Vector3d fixed_tangent(const SpherePoint& x) {
    Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
    if (std::abs(x.v.dot(axis)) > 0.9) axis = Eigen::Vector3d::UnitY();
    Eigen::Vector3d t = axis - axis.dot(x.v) * x.v;
    return t.normalized();
}

SolverResult<SpherePoint> weiszfeld(const WeightedSample<SpherePoint>& sample, const SolverSettings& settings) {
    const Sphere sphere;
    const auto pts = sample.points();
    const auto ws = sample.weights();

    SolverResult<SpherePoint> result{inductive_mean(sphere, pts), 0.0, 0, false, {}};
    result.objective = frechet_objective(sphere, sample, result.point, 1);
    result.objective_history.push_back(result.objective);

    SpherePoint x = result.point;
    for (int it = 1; it <= settings.max_iterations; ++it) {
        result.iterations = it;
        Eigen::Vector3d numerator = Eigen::Vector3d::Zero();
        double denominator = 0.0;
        bool coincident = false;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const Eigen::Vector3d v = sphere.log(x, pts[j]);
            const double d = v.norm();
            if (d < coincidence_radius) {
                if (ws[j] > 0.0) coincident = true;
                continue;
            }
            numerator += ws[j] * v / d;
            denominator += ws[j] / d;
        }
        if (coincident) {
            x = sphere.exp(x, nudge * fixed_tangent(x));
            continue;
        }
        if (denominator == 0.0) {
            result.converged = true;
            break;
        }
        const Eigen::Vector3d step = numerator / denominator;
        x = sphere.exp(x, step);
        const double obj = frechet_objective(sphere, sample, x, 1);
        if (obj < result.objective) {
            result.point = x;
            result.objective = obj;
        }
        result.objective_history.push_back(result.objective);
        if (step.norm() < settings.displacement_tolerance) {
            result.converged = true;
            break;
        }
    }

    for (const auto& p : pts) {
        const double obj = frechet_objective(sphere, sample, p, 1);
        if (obj < result.objective - settings.objective_tolerance) {
            result.point = p;
            result.objective = obj;
            result.objective_history.push_back(obj);
        }
    }

    return result;
}

}  // namespace

SolverResult<SpherePoint> frechet_median_sphere(const WeightedSample<SpherePoint>& sample,
                                                const SolverSettings& settings) {
    settings.validate();
    SolverResult<SpherePoint> result;
    try {
        result = weiszfeld(sample, settings);
    } catch (const NoUniqueGeodesic&) {
        throw PreconditionError("sphere median: sample contains antipodal configurations, so it cannot lie in an "
                                "open ball of radius pi/2");
    }
    if (!validate_support_radius(Sphere{}, sample.points(), result.point)) {
        throw PreconditionError("sphere median: sample is not contained in the open ball of radius pi/2 about the "
                                "median estimate");
    }
    return result;
}

}  // namespace fmoe::frechet
