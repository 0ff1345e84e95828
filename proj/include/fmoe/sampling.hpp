#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "fmoe/rng.hpp"
#include "fmoe/spaces/poincare.hpp"
#include "fmoe/spaces/spd.hpp"
#include "fmoe/spaces/spider.hpp"

namespace fmoe::sampling {

/// Unif({1..legs}) × ((1−α)|N(inlier_mean, sd²)| + α|N(outlier_mean, sd²)|).
struct SpiderMixtureParams {
    int legs = 5;
    double alpha_outlier = 0.1;
    double inlier_mean = 1.0;
    double outlier_mean = 100.0;
    double sd = 1.0;

    void validate() const;
};

spaces::SpiderPoint sample_spider_mixture(const SpiderMixtureParams& params, RngStream& rng);
std::vector<spaces::SpiderPoint> sample_spider_mixture(const SpiderMixtureParams& params, std::size_t n,
                                                       RngStream& rng);

/// n draws of t_ν(0, Σ) with Σ the shape matrix, returned as the columns of
/// a d×n matrix. Each draw is L z √(ν/w) with LLᵀ = Σ, z ~ N(0, I), w ~ χ²_ν,
/// so the covariance is ν/(ν−2)·Σ. Requires ν > 2.
Eigen::MatrixXd sample_multivariate_t(double nu, const spaces::SpdMatrix& sigma, std::size_t n, RngStream& rng);

/// (1−α) N(0, sd²I) restricted to the open unit disk (by rejection) plus
/// α Unif on the circle of radius 1 − 10⁻⁷.
spaces::DiskPoint sample_disk_mixture(double alpha_outlier, double inlier_sd, RngStream& rng);
std::vector<spaces::DiskPoint> sample_disk_mixture(double alpha_outlier, double inlier_sd, std::size_t n,
                                                   RngStream& rng);

inline constexpr double disk_outlier_radius = 1.0 - 1e-7;

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// signs of diag(R) folded into Q.
Eigen::MatrixXd haar_orthogonal(Eigen::Index d, RngStream& rng);

/// Q diag(eigenvalues) Qᵀ with Q Haar-random.
spaces::SpdMatrix generate_spd_with_spectrum(const Eigen::VectorXd& eigenvalues, RngStream& rng);

}  // namespace fmoe::sampling
