#include "fmoe/spaces/spd.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "fmoe/tolerances.hpp"

namespace fmoe::spaces {

namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Spectrum of a PSD input with round-off negatives clamped to zero.
Eigen::VectorXd clamped_psd_spectrum(const Eigen::VectorXd& lambda, const char* what) {
    const double scale = lambda.cwiseAbs().maxCoeff();
    Eigen::VectorXd out = lambda;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (out(i) < 0.0) {
            if (out(i) < -tolerances.psd_slack * scale) {
                throw std::invalid_argument(std::string(what) + " is not positive semidefinite");
            }
            out(i) = 0.0;
        }
    }
    return out;
}

Eigen::MatrixXd from_spectrum(const SymmetricEigen& eig, const Eigen::VectorXd& values) {
    const auto& q = eig.eigenvectors;
    return symmetrized(q * values.asDiagonal() * q.transpose());
}

}  // namespace

Eigen::MatrixXd SymmetricEigen::reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
}

void check_symmetric(const Eigen::MatrixXd& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument(std::string(what) + " must be a nonempty square matrix");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(what) + " has non-finite entries");
    }
    const double asym = (m - m.transpose()).norm();
    if (asym > tolerances.symmetry * m.norm()) {
        throw std::invalid_argument(std::string(what) + " is not symmetric");
    }
}

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& m) {
    check_symmetric(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetrized(m));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symmetric eigendecomposition did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXd sym_matrix_function(const SymmetricEigen& eig, const std::function<double(double)>& f) {
    Eigen::VectorXd values(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        values(i) = f(eig.eigenvalues(i));
        if (!std::isfinite(values(i))) {
            throw std::domain_error("matrix function undefined at eigenvalue " + std::to_string(eig.eigenvalues(i)));
        }
    }
    return from_spectrum(eig, values);
}

Eigen::MatrixXd sym_matrix_function(const Eigen::MatrixXd& m, const std::function<double(double)>& f) {
    return sym_matrix_function(symmetric_eigen(m), f);
}

Eigen::MatrixXd matrix_sqrt(const Eigen::MatrixXd& m) {
    return sym_matrix_function(m, [](double x) { return x >= 0.0 ? std::sqrt(x) : std::nan(""); });
}

Eigen::MatrixXd matrix_inv_sqrt(const Eigen::MatrixXd& m) {
    return sym_matrix_function(m, [](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : std::nan(""); });
}

Eigen::MatrixXd matrix_log(const Eigen::MatrixXd& m) {
    return sym_matrix_function(m, [](double x) { return x > 0.0 ? std::log(x) : std::nan(""); });
}

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m) {
    return sym_matrix_function(m, [](double x) { return std::exp(x); });
}

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& m, double t) {
    return sym_matrix_function(m, [t](double x) { return x > 0.0 ? std::pow(x, t) : std::nan(""); });
}

SpdMatrix::SpdMatrix(const Eigen::MatrixXd& m) {
    check_symmetric(m, "SPD matrix");
    Eigen::MatrixXd s = symmetrized(m);
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("SPD matrix is not positive definite");
    }
    m_ = std::move(s);
}

SpdMatrix SpdMatrix::trusted(Eigen::MatrixXd m) {
    SpdMatrix out;
    out.m_ = std::move(m);
    return out;
}

double SpdMatrix::smallest_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

double ai_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    check_symmetric(a, "A");
    check_symmetric(b, "B");
    if (a.rows() != b.rows()) {
        throw std::invalid_argument("SPD matrices of different dimension");
    }
    // Eigenvalues of A^{-1}B coincide with those of A^{-1/2} B A^{-1/2}.
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetrized(b), symmetrized(a),
                                                                     Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::invalid_argument("affine-invariant distance needs positive-definite inputs");
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (!(lambda > 0.0)) {
            throw std::invalid_argument("affine-invariant distance needs positive-definite inputs");
        }
        const double l = std::log(lambda);
        sum += l * l;
    }
    return std::sqrt(sum);
}

Eigen::MatrixXd ai_interpolate(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double t) {
    check_fraction(t);
    const SymmetricEigen ea = symmetric_eigen(a);
    if (!(ea.eigenvalues(0) > 0.0)) {
        throw std::invalid_argument("affine-invariant geodesic needs positive-definite inputs");
    }
    const Eigen::MatrixXd half = sym_matrix_function(ea, [](double x) { return std::sqrt(x); });
    const Eigen::MatrixXd inv_half = sym_matrix_function(ea, [](double x) { return 1.0 / std::sqrt(x); });
    const Eigen::MatrixXd inner = symmetrized(inv_half * symmetrized(b) * inv_half);
    const SymmetricEigen ei = symmetric_eigen(inner);
    if (!(ei.eigenvalues(0) > 0.0)) {
        throw std::invalid_argument("affine-invariant geodesic needs positive-definite inputs");
    }
    const Eigen::MatrixXd powered = sym_matrix_function(ei, [t](double x) { return std::pow(x, t); });
    return symmetrized(half * powered * half);
}

double bw_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    check_symmetric(a, "A");
    check_symmetric(b, "B");
    if (a.rows() != b.rows()) {
        throw std::invalid_argument("SPD matrices of different dimension");
    }
    const SymmetricEigen ea = symmetric_eigen(a);
    const SymmetricEigen eb = symmetric_eigen(b);
    const Eigen::MatrixXd ha = from_spectrum(ea, clamped_psd_spectrum(ea.eigenvalues, "A").cwiseSqrt());
    const Eigen::MatrixXd hb = from_spectrum(eb, clamped_psd_spectrum(eb.eigenvalues, "B").cwiseSqrt());
    // min over orthogonal U of ‖A^{1/2} − B^{1/2}U‖_F, attained at the polar
    // factor of A^{1/2}B^{1/2}. Avoids the cancellation in
    // tr A + tr B − 2 tr (A^{1/2} B A^{1/2})^{1/2} when A ≈ B.
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(ha * hb, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd u = svd.matrixV() * svd.matrixU().transpose();
    return (ha - hb * u).norm();
}

Eigen::MatrixXd bw_interpolate(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double t) {
    check_fraction(t);
    const SymmetricEigen ea = symmetric_eigen(a);
    if (!(ea.eigenvalues(0) > 0.0)) {
        throw std::invalid_argument("Bures-Wasserstein geodesic needs positive-definite inputs");
    }
    const Eigen::MatrixXd half = sym_matrix_function(ea, [](double x) { return std::sqrt(x); });
    const Eigen::MatrixXd inv_half = sym_matrix_function(ea, [](double x) { return 1.0 / std::sqrt(x); });
    const Eigen::MatrixXd cross = matrix_sqrt(symmetrized(half * symmetrized(b) * half));
    // Optimal transport map from N(0, A) to N(0, B).
    const Eigen::MatrixXd transport = symmetrized(inv_half * cross * inv_half);
    const Eigen::Index d = a.rows();
    const Eigen::MatrixXd step = (1.0 - t) * Eigen::MatrixXd::Identity(d, d) + t * transport;
    return symmetrized(step * symmetrized(a) * step);
}

SpdAffineInvariant::SpdAffineInvariant(Eigen::Index dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("SPD dimension must be positive");
}

void SpdAffineInvariant::check(const SpdMatrix& m) const {
    if (m.dimension() != dim_) {
        throw std::invalid_argument("SPD matrix of dimension " + std::to_string(m.dimension()) + " in SPD(" +
                                    std::to_string(dim_) + ")");
    }
}

double SpdAffineInvariant::distance(const SpdMatrix& a, const SpdMatrix& b) const {
    check(a);
    check(b);
    return ai_distance(a.matrix(), b.matrix());
}

SpdMatrix SpdAffineInvariant::interpolate(const SpdMatrix& a, const SpdMatrix& b, double t) const {
    check_fraction(t);
    check(a);
    check(b);
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    return SpdMatrix::trusted(ai_interpolate(a.matrix(), b.matrix(), t));
}

SpdBuresWasserstein::SpdBuresWasserstein(Eigen::Index dim, double eigenvalue_floor)
    : dim_(dim), floor_(eigenvalue_floor) {
    if (dim < 1) throw std::invalid_argument("SPD dimension must be positive");
    if (!(eigenvalue_floor > 0.0) || !std::isfinite(eigenvalue_floor)) {
        throw std::invalid_argument("Bures-Wasserstein eigenvalue floor must be positive");
    }
}

void SpdBuresWasserstein::check(const SpdMatrix& m) const {
    if (m.dimension() != dim_) {
        throw std::invalid_argument("SPD matrix of dimension " + std::to_string(m.dimension()) + " in SPD(" +
                                    std::to_string(dim_) + ")");
    }
}

double SpdBuresWasserstein::distance(const SpdMatrix& a, const SpdMatrix& b) const {
    check(a);
    check(b);
    return bw_distance(a.matrix(), b.matrix());
}

SpdMatrix SpdBuresWasserstein::interpolate(const SpdMatrix& a, const SpdMatrix& b, double t) const {
    check_fraction(t);
    check(a);
    check(b);
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    return SpdMatrix::trusted(bw_interpolate(a.matrix(), b.matrix(), t));
}

}  // namespace fmoe::spaces
