#pragma once

// Random instance generators, sampled property checks and brute-force
// oracles shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "fmoe/frechet.hpp"
#include "fmoe/rng.hpp"
#include "fmoe/sampling.hpp"
#include "fmoe/spaces/any_space.hpp"

namespace fmoe::testing {

// --- generators -------------------------------------------------------------

inline Eigen::VectorXd random_vector(Eigen::Index dim, RngStream& rng, double scale = 2.0) {
    boost::random::normal_distribution<double> normal(0.0, scale);
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = normal(rng);
    return v;
}

inline spaces::SpiderPoint random_spider_point(const spaces::Spider& spider, RngStream& rng) {
    boost::random::uniform_int_distribution<int> leg(1, spider.legs());
    boost::random::uniform_01<double> unit;
    if (unit(rng) < 0.1) return spider.make_point(1, 0.0);
    return spider.make_point(leg(rng), 3.0 * unit(rng));
}

inline spaces::DiskPoint random_disk_point(RngStream& rng, double max_radius = 0.9) {
    boost::random::uniform_01<double> unit;
    const double r = max_radius * std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    return {r * std::cos(theta), r * std::sin(theta)};
}

inline spaces::SpherePoint random_sphere_point(RngStream& rng) {
    while (true) {
        const Eigen::VectorXd v = random_vector(3, rng, 1.0);
        if (v.norm() > 1e-3) return spaces::Sphere::from_vector(v.head<3>());
    }
}

// Spectrum in [lo, hi] with Haar eigenvectors.
inline spaces::SpdMatrix random_spd(Eigen::Index dim, RngStream& rng, double lo = 0.5, double hi = 3.0) {
    boost::random::uniform_real_distribution<double> eig(lo, hi);
    Eigen::VectorXd lambda(dim);
    for (Eigen::Index i = 0; i < dim; ++i) lambda(i) = eig(rng);
    return sampling::generate_spd_with_spectrum(lambda, rng);
}

// Random point of whichever concrete space `space` holds.
inline spaces::SpacePoint random_point(const spaces::AnySpace& space, RngStream& rng) {
    return std::visit(
        [&](const auto& s) -> spaces::SpacePoint {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, spaces::Euclidean>) {
                return random_vector(s.dimension(), rng);
            } else if constexpr (std::is_same_v<S, spaces::Spider>) {
                return random_spider_point(s, rng);
            } else if constexpr (std::is_same_v<S, spaces::PoincareDisk>) {
                return random_disk_point(rng);
            } else if constexpr (std::is_same_v<S, spaces::Sphere>) {
                return random_sphere_point(rng);
            } else {
                return random_spd(s.dimension(), rng);
            }
        },
        space.variant());
}

inline bool is_spd_space(const spaces::AnySpace& space) {
    return std::holds_alternative<spaces::SpdAffineInvariant>(space.variant()) ||
           std::holds_alternative<spaces::SpdBuresWasserstein>(space.variant());
}

// The concrete spaces exercised by the sampled metric and geodesic suites.
inline std::vector<spaces::AnySpace> all_spaces() {
    return {spaces::Euclidean(3),          spaces::Spider(5),   spaces::PoincareDisk{},
            spaces::Sphere{},              spaces::SpdAffineInvariant(3),
            spaces::SpdBuresWasserstein(3, 0.25)};
}

// --- sampled properties -----------------------------------------------------

struct PropertyReport {
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    bool ok() const { return cases > 0 && failures == 0; }

    void fail(const std::string& what) {
        if (failures++ == 0) first_failure = what;
    }
};

// Symmetry, identity and the triangle inequality on random triples, with
// absolute tolerance 1e-9 (relative 1e-7 on the SPD spaces).
inline PropertyReport check_metric_axioms(const spaces::AnySpace& space, int cases, std::uint64_t seed) {
    RngStream rng(seed, 11);
    PropertyReport rep;
    const bool spd = is_spd_space(space);
    for (int i = 0; i < cases; ++i) {
        const auto x = random_point(space, rng);
        const auto y = random_point(space, rng);
        const auto z = random_point(space, rng);
        const double dxy = space.distance(x, y), dyx = space.distance(y, x);
        const double dyz = space.distance(y, z), dxz = space.distance(x, z);
        const double scale = spd ? std::max(1.0, dxy + dyz + dxz) : 1.0;
        const double tol = spd ? 1e-7 * scale : 1e-9;
        ++rep.cases;
        std::ostringstream msg;
        if (!(dxy >= 0.0) || !std::isfinite(dxy)) {
            msg << space.name() << " case " << i << ": distance " << dxy;
            rep.fail(msg.str());
        } else if (std::abs(dxy - dyx) > tol) {
            msg << space.name() << " case " << i << ": asymmetric " << dxy << " vs " << dyx;
            rep.fail(msg.str());
        } else if (space.distance(x, x) > tol) {
            msg << space.name() << " case " << i << ": d(x,x) = " << space.distance(x, x);
            rep.fail(msg.str());
        } else if (dxz > dxy + dyz + tol) {
            msg << space.name() << " case " << i << ": triangle " << dxz << " > " << dxy << " + " << dyz;
            rep.fail(msg.str());
        }
    }
    return rep;
}

// Endpoints, unit speed d(x, γ(t)) = t·d(x,y), and consistency
// d(γ(t), γ(s)) = (s−t)·d(x,y) on random pairs.
inline PropertyReport check_geodesics(const spaces::AnySpace& space, int cases, std::uint64_t seed) {
    RngStream rng(seed, 12);
    boost::random::uniform_01<double> unit;
    PropertyReport rep;
    const bool spd = is_spd_space(space);
    const double endpoint_tol = spd ? 1e-7 : 1e-9;
    const double speed_tol = spd ? 1e-7 : 1e-8;
    for (int i = 0; i < cases; ++i) {
        const auto x = random_point(space, rng);
        const auto y = random_point(space, rng);
        double t = unit(rng), s = unit(rng);
        if (t > s) std::swap(t, s);
        const double d = space.distance(x, y);
        const auto gt = space.interpolate(x, y, t);
        const auto gs = space.interpolate(x, y, s);
        const double scale = std::max(1.0, d);
        ++rep.cases;
        std::ostringstream msg;
        msg << space.name() << " case " << i << " (d=" << d << ", t=" << t << ", s=" << s << "): ";
        const double e0 = space.distance(space.interpolate(x, y, 0.0), x);
        const double e1 = space.distance(space.interpolate(x, y, 1.0), y);
        const double speed = space.distance(x, gt);
        const double chord = space.distance(gt, gs);
        if (e0 > endpoint_tol * scale || e1 > endpoint_tol * scale) {
            msg << "endpoint error " << e0 << ", " << e1;
            rep.fail(msg.str());
        } else if (std::abs(speed - t * d) > speed_tol * scale) {
            msg << "d(x, g(t)) = " << speed << " vs " << t * d;
            rep.fail(msg.str());
        } else if (std::abs(chord - (s - t) * d) > 1e-7 * scale) {
            msg << "d(g(t), g(s)) = " << chord << " vs " << (s - t) * d;
            rep.fail(msg.str());
        }
    }
    return rep;
}

// d²(m,z) ≤ ½d²(x,z) + ½d²(y,z) − ¼d²(x,y) + 1e-7 with m the midpoint of x, y.
inline PropertyReport check_npc_midpoint(const spaces::AnySpace& space, int cases, std::uint64_t seed) {
    RngStream rng(seed, 13);
    PropertyReport rep;
    for (int i = 0; i < cases; ++i) {
        const auto x = random_point(space, rng);
        const auto y = random_point(space, rng);
        const auto z = random_point(space, rng);
        const auto m = space.interpolate(x, y, 0.5);
        const double dmz = space.distance(m, z), dxz = space.distance(x, z);
        const double dyz = space.distance(y, z), dxy = space.distance(x, y);
        const double lhs = dmz * dmz;
        const double rhs = 0.5 * dxz * dxz + 0.5 * dyz * dyz - 0.25 * dxy * dxy;
        const double slack = 1e-7 * std::max(1.0, dxz * dxz + dyz * dyz);
        ++rep.cases;
        if (lhs > rhs + slack) {
            std::ostringstream msg;
            msg << space.name() << " case " << i << ": " << lhs << " > " << rhs;
            rep.fail(msg.str());
        }
    }
    return rep;
}

// --- brute-force median oracles ---------------------------------------------

// Minimum of Σ|x − p_j|/m over a grid of step h covering the data.
inline double grid_median_objective_1d(const std::vector<double>& pts, double h) {
    const auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
    double best = std::numeric_limits<double>::infinity();
    const auto steps = static_cast<long>(std::ceil((*hi - *lo) / h));
    for (long i = 0; i <= steps; ++i) {
        const double x = std::min(*lo + static_cast<double>(i) * h, *hi);
        double f = 0.0;
        for (double p : pts) f += std::abs(x - p);
        best = std::min(best, f / static_cast<double>(pts.size()));
    }
    return best;
}

inline double grid_median_objective_2d(const std::vector<Eigen::VectorXd>& pts, double h) {
    double x0 = pts[0](0), x1 = x0, y0 = pts[0](1), y1 = y0;
    for (const auto& p : pts) {
        x0 = std::min(x0, p(0));
        x1 = std::max(x1, p(0));
        y0 = std::min(y0, p(1));
        y1 = std::max(y1, p(1));
    }
    double best = std::numeric_limits<double>::infinity();
    const auto nx = static_cast<long>(std::ceil((x1 - x0) / h));
    const auto ny = static_cast<long>(std::ceil((y1 - y0) / h));
    for (long i = 0; i <= nx; ++i) {
        for (long j = 0; j <= ny; ++j) {
            const double gx = x0 + static_cast<double>(i) * h, gy = y0 + static_cast<double>(j) * h;
            double f = 0.0;
            for (const auto& p : pts) f += std::hypot(gx - p(0), gy - p(1));
            best = std::min(best, f / static_cast<double>(pts.size()));
        }
    }
    return best;
}

// Every leg, radii 0..max radius in steps of h.
inline double grid_median_objective_spider(const spaces::Spider& spider, const std::vector<spaces::SpiderPoint>& pts,
                                           double h) {
    double r_max = 0.0;
    for (const auto& p : pts) r_max = std::max(r_max, p.radius);
    double best = std::numeric_limits<double>::infinity();
    const auto steps = static_cast<long>(std::ceil(r_max / h));
    for (int leg = 1; leg <= spider.legs(); ++leg) {
        for (long i = 0; i <= steps; ++i) {
            const auto x = spider.make_point(leg, std::min(static_cast<double>(i) * h, r_max));
            double f = 0.0;
            for (const auto& p : pts) f += spider.distance(x, p);
            best = std::min(best, f / static_cast<double>(pts.size()));
        }
    }
    return best;
}

// Colatitude/longitude grid over the cap of angular radius `cap` about the
// north pole, spacing at most h in arc length.
inline double grid_median_objective_sphere(const std::vector<spaces::SpherePoint>& pts, double cap, double h) {
    const spaces::Sphere sphere;
    double best = std::numeric_limits<double>::infinity();
    const auto rings = static_cast<long>(std::ceil(cap / h));
    for (long i = 0; i <= rings; ++i) {
        const double colat = cap * static_cast<double>(i) / static_cast<double>(rings);
        const long around = std::max(1L, static_cast<long>(std::ceil(2.0 * std::numbers::pi * std::sin(colat) / h)));
        for (long j = 0; j < around; ++j) {
            const double lon = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(around);
            const auto x = spaces::Sphere::from_angles(colat, lon);
            double f = 0.0;
            for (const auto& p : pts) f += sphere.distance(x, p);
            best = std::min(best, f / static_cast<double>(pts.size()));
        }
    }
    return best;
}

}  // namespace fmoe::testing

namespace fmoe::testing {

struct OracleGap {
    std::string instance;
    double solver_objective;
    double grid_objective;

    double gap() const { return solver_objective - grid_objective; }
};

// Small median instances on ℝ, ℝ², the spider and S², each solved by the
// library and by a brute-force grid search.
inline std::vector<OracleGap> median_oracle_gaps(std::uint64_t seed) {
    using frechet::WeightedSample;
    const frechet::SolverSettings settings;
    std::vector<OracleGap> out;
    RngStream rng(seed, 21);
    boost::random::normal_distribution<double> normal;
    boost::random::uniform_01<double> unit;

    {
        const std::vector<double> raw{0.0, 1.0, 10.0};
        std::vector<Eigen::VectorXd> pts;
        for (double x : raw) pts.push_back(Eigen::VectorXd::Constant(1, x));
        const auto r = frechet::frechet_median_npc(spaces::Euclidean(1), WeightedSample<Eigen::VectorXd>::uniform(pts),
                                                   settings, seed);
        out.push_back({"R {0,1,10}", r.objective, grid_median_objective_1d(raw, 1e-4)});
    }
    {
        std::vector<double> raw;
        std::vector<Eigen::VectorXd> pts;
        for (int i = 0; i < 8; ++i) {
            raw.push_back(2.0 * normal(rng));
            pts.push_back(Eigen::VectorXd::Constant(1, raw.back()));
        }
        const auto r = frechet::frechet_median_npc(spaces::Euclidean(1), WeightedSample<Eigen::VectorXd>::uniform(pts),
                                                   settings, seed);
        out.push_back({"R random 8", r.objective, grid_median_objective_1d(raw, 1e-4)});
    }
    {
        std::vector<Eigen::VectorXd> pts{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
        const auto r = frechet::frechet_median_npc(spaces::Euclidean(2), WeightedSample<Eigen::VectorXd>::uniform(pts),
                                                   settings, seed);
        out.push_back({"R2 triangle", r.objective, grid_median_objective_2d(pts, 1e-3)});
    }
    {
        std::vector<Eigen::VectorXd> pts;
        for (int i = 0; i < 6; ++i) pts.push_back(Eigen::Vector2d(2.0 * unit(rng), 2.0 * unit(rng)));
        const auto r = frechet::frechet_median_npc(spaces::Euclidean(2), WeightedSample<Eigen::VectorXd>::uniform(pts),
                                                   settings, seed);
        out.push_back({"R2 random 6", r.objective, grid_median_objective_2d(pts, 1e-3)});
    }
    {
        const spaces::Spider spider(5);
        const std::vector<spaces::SpiderPoint> pts{{1, 2.0}, {2, 2.0}, {3, 2.0}};
        const auto r = frechet::frechet_median_npc(spider, WeightedSample<spaces::SpiderPoint>::uniform(pts), settings,
                                                   seed);
        out.push_back({"spider symmetric 3", r.objective, grid_median_objective_spider(spider, pts, 1e-4)});
    }
    for (int trial = 0; trial < 3; ++trial) {
        const spaces::Spider spider(5);
        std::vector<spaces::SpiderPoint> pts;
        for (int i = 0; i < 9; ++i) pts.push_back(random_spider_point(spider, rng));
        const auto r = frechet::frechet_median_npc(spider, WeightedSample<spaces::SpiderPoint>::uniform(pts), settings,
                                                   seed);
        out.push_back({"spider random 9 #" + std::to_string(trial), r.objective,
                       grid_median_objective_spider(spider, pts, 1e-4)});
    }
    {
        const std::vector<spaces::SpherePoint> pts{spaces::Sphere::from_angles(0.1, 0.0),
                                                   spaces::Sphere::from_angles(0.2, 2.0),
                                                   spaces::Sphere::from_angles(0.15, 4.0)};
        const auto r = frechet::frechet_median_sphere(WeightedSample<spaces::SpherePoint>::uniform(pts), settings);
        out.push_back({"S2 three near pole", r.objective, grid_median_objective_sphere(pts, 0.3, 1e-3)});
    }
    {
        std::vector<spaces::SpherePoint> pts;
        for (int i = 0; i < 5; ++i) {
            pts.push_back(spaces::Sphere::from_angles(0.4 * unit(rng), 2.0 * std::numbers::pi * unit(rng)));
        }
        const auto r = frechet::frechet_median_sphere(WeightedSample<spaces::SpherePoint>::uniform(pts), settings);
        out.push_back({"S2 random 5", r.objective, grid_median_objective_sphere(pts, 0.45, 1e-3)});
    }
    return out;
}

}  // namespace fmoe::testing
