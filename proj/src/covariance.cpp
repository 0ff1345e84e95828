#include "fmoe/covariance.hpp"

#include <stdexcept>
#include <string>

#include "fmoe/spaces/spd.hpp"

namespace fmoe::covariance {

namespace {

CovarianceEstimate finish(Eigen::MatrixXd m, std::optional<double> lambda0) {
    m = 0.5 * (m + m.transpose()).eval();
    CovarianceEstimate est;
    est.lambda_min = spaces::symmetric_eigen(m).eigenvalues(0);
    est.matrix = std::move(m);
    est.floor_satisfied = lambda0 ? eigenvalue_floor_check(est, *lambda0) : est.lambda_min > 0.0;
    return est;
}

}  // namespace

CovarianceEstimate sample_covariance(std::span<const Eigen::VectorXd> data, std::optional<double> lambda0) {
    if (data.empty()) throw std::invalid_argument("sample covariance of an empty data set");
    const Eigen::Index d = data.front().size();
    if (d == 0) throw std::invalid_argument("sample covariance of zero-dimensional vectors");
    Eigen::MatrixXd columns(d, static_cast<Eigen::Index>(data.size()));
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data[i].size() != d) {
            throw std::invalid_argument("data vector " + std::to_string(i) + " has dimension " +
                                        std::to_string(data[i].size()) + ", expected " + std::to_string(d));
        }
        columns.col(static_cast<Eigen::Index>(i)) = data[i];
    }
    return sample_covariance(columns, lambda0);
}

CovarianceEstimate sample_covariance(const Eigen::Ref<const Eigen::MatrixXd>& columns, std::optional<double> lambda0) {
    if (columns.cols() == 0 || columns.rows() == 0) {
        throw std::invalid_argument("sample covariance of an empty data set");
    }
    if (lambda0 && !(*lambda0 > 0.0)) throw std::invalid_argument("eigenvalue floor must be positive");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(columns.rows(), columns.rows());
    m.selfadjointView<Eigen::Lower>().rankUpdate(columns);
    m = m.selfadjointView<Eigen::Lower>();
    m /= static_cast<double>(columns.cols());
    return finish(std::move(m), lambda0);
}

bool eigenvalue_floor_check(const CovarianceEstimate& est, double lambda0) {
    if (!(lambda0 > 0.0)) throw std::invalid_argument("eigenvalue floor must be positive");
    return est.lambda_min >= lambda0;
}

}  // namespace fmoe::covariance
