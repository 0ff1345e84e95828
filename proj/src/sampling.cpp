#include "fmoe/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/random/chi_squared_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace fmoe::sampling {

void SpiderMixtureParams::validate() const {
    if (legs < 2) throw std::invalid_argument("spider mixture needs at least two legs");
    if (!(alpha_outlier >= 0.0 && alpha_outlier <= 1.0)) {
        throw std::invalid_argument("outlier fraction must lie in [0, 1]");
    }
    if (!(sd > 0.0)) throw std::invalid_argument("spider mixture sd must be positive");
    if (!std::isfinite(inlier_mean) || !std::isfinite(outlier_mean)) {
        throw std::invalid_argument("spider mixture means must be finite");
    }
}

spaces::SpiderPoint sample_spider_mixture(const SpiderMixtureParams& params, RngStream& rng) {
    boost::random::uniform_int_distribution<int> leg_dist(1, params.legs);
    boost::random::uniform_01<double> unit;
    const int leg = leg_dist(rng);
    const bool outlier = unit(rng) < params.alpha_outlier;
    boost::random::normal_distribution<double> radial(outlier ? params.outlier_mean : params.inlier_mean, params.sd);
    const double radius = std::abs(radial(rng));
    return radius == 0.0 ? spaces::SpiderPoint{1, 0.0} : spaces::SpiderPoint{leg, radius};
}

std::vector<spaces::SpiderPoint> sample_spider_mixture(const SpiderMixtureParams& params, std::size_t n,
                                                       RngStream& rng) {
    params.validate();
    std::vector<spaces::SpiderPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_spider_mixture(params, rng));
    return out;
}

Eigen::MatrixXd sample_multivariate_t(double nu, const spaces::SpdMatrix& sigma, std::size_t n, RngStream& rng) {
    if (!(nu > 2.0)) {
        throw std::invalid_argument("multivariate t needs nu > 2 for a finite covariance");
    }
    const Eigen::Index d = sigma.dimension();
    const Eigen::MatrixXd lower = sigma.matrix().llt().matrixL();

    boost::random::normal_distribution<double> normal;
    boost::random::chi_squared_distribution<double> chi2(nu);
    Eigen::MatrixXd z(d, static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < z.cols(); ++i) {
        for (Eigen::Index j = 0; j < d; ++j) z(j, i) = normal(rng);
        z.col(i) *= std::sqrt(nu / chi2(rng));
    }
    return lower * z;
}

spaces::DiskPoint sample_disk_mixture(double alpha_outlier, double inlier_sd, RngStream& rng) {
    if (!(alpha_outlier >= 0.0 && alpha_outlier <= 1.0)) {
        throw std::invalid_argument("outlier fraction must lie in [0, 1]");
    }
    if (!(inlier_sd > 0.0)) throw std::invalid_argument("disk inlier sd must be positive");

    boost::random::uniform_01<double> unit;
    if (unit(rng) < alpha_outlier) {
        boost::random::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        const double theta = angle(rng);
        return {disk_outlier_radius * std::cos(theta), disk_outlier_radius * std::sin(theta)};
    }
    boost::random::normal_distribution<double> normal(0.0, inlier_sd);
    while (true) {
        spaces::DiskPoint p{normal(rng), normal(rng)};
        if (p.squared_norm() < 1.0) return p;
    }
}

std::vector<spaces::DiskPoint> sample_disk_mixture(double alpha_outlier, double inlier_sd, std::size_t n,
                                                   RngStream& rng) {
    std::vector<spaces::DiskPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_disk_mixture(alpha_outlier, inlier_sd, rng));
    return out;
}

Eigen::MatrixXd haar_orthogonal(Eigen::Index d, RngStream& rng) {
    if (d < 1) throw std::invalid_argument("orthogonal matrix dimension must be positive");
    boost::random::normal_distribution<double> normal;
    Eigen::MatrixXd g(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) g(i, j) = normal(rng);
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
    const Eigen::MatrixXd& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < d; ++j) {
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return q;
}

spaces::SpdMatrix generate_spd_with_spectrum(const Eigen::VectorXd& eigenvalues, RngStream& rng) {
    if (eigenvalues.size() == 0) throw std::invalid_argument("empty spectrum");
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        if (!(eigenvalues(i) > 0.0) || !std::isfinite(eigenvalues(i))) {
            throw std::invalid_argument("spectrum must be positive and finite");
        }
    }
    const Eigen::Index d = eigenvalues.size();
    if ((eigenvalues.array() == eigenvalues(0)).all()) {
        // c·QQᵀ is exactly c·I.
        return spaces::SpdMatrix(eigenvalues(0) * Eigen::MatrixXd::Identity(d, d));
    }
    const Eigen::MatrixXd q = haar_orthogonal(d, rng);
    const Eigen::MatrixXd m = q * eigenvalues.asDiagonal() * q.transpose();
    return spaces::SpdMatrix(0.5 * (m + m.transpose()));
}

}  // namespace fmoe::sampling
