#pragma once

#include <optional>
#include <span>

#include <Eigen/Dense>

namespace fmoe::covariance {

/// A sample covariance with its smallest eigenvalue and, when a floor λ₀ was
/// supplied, whether λ_min ≥ λ₀.
struct CovarianceEstimate {
    Eigen::MatrixXd matrix;
    double lambda_min = 0;
    bool floor_satisfied = false;
};

/// (1/n) Σ xᵢxᵢᵀ with no centering (zero-mean model). The result is exactly
/// symmetric. Without a floor, floor_satisfied reports λ_min > 0.
CovarianceEstimate sample_covariance(std::span<const Eigen::VectorXd> data,
                                     std::optional<double> lambda0 = std::nullopt);

/// Same estimator on the columns of a d×n matrix.
CovarianceEstimate sample_covariance(const Eigen::Ref<const Eigen::MatrixXd>& columns,
                                     std::optional<double> lambda0 = std::nullopt);

/// λ_min(est) ≥ λ₀ (inclusive).
bool eigenvalue_floor_check(const CovarianceEstimate& est, double lambda0);

}  // namespace fmoe::covariance
