#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "fmoe/geometry.hpp"

namespace fmoe::spaces {

/// Eigendecomposition m = Q diag(λ) Qᵀ of a symmetric matrix, λ ascending.
struct SymmetricEigen {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    Eigen::MatrixXd reconstruct() const;
};

/// Throws std::invalid_argument unless m is square and symmetric to within
/// the shared symmetry tolerance.
void check_symmetric(const Eigen::MatrixXd& m, const char* what = "matrix");

/// Factorizes (m + mᵀ)/2.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& m);

/// Q f(Λ) Qᵀ. Throws std::domain_error if f is not finite on the spectrum.
Eigen::MatrixXd sym_matrix_function(const SymmetricEigen& eig, const std::function<double(double)>& f);
Eigen::MatrixXd sym_matrix_function(const Eigen::MatrixXd& m, const std::function<double(double)>& f);

Eigen::MatrixXd matrix_sqrt(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_inv_sqrt(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_log(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& m, double t);

/// A symmetric positive-definite matrix. Construction checks symmetry and
/// strict positive-definiteness and stores the exactly symmetrized matrix.
class SpdMatrix {
public:
    SpdMatrix() = default;
    explicit SpdMatrix(const Eigen::MatrixXd& m);

    /// Skips validation; for results of operations already known to be SPD.
    static SpdMatrix trusted(Eigen::MatrixXd m);

    const Eigen::MatrixXd& matrix() const { return m_; }
    Eigen::Index dimension() const { return m_.rows(); }
    double smallest_eigenvalue() const;

private:
    Eigen::MatrixXd m_;
};

/// ‖log A^{-1/2} B A^{-1/2}‖_F, via the generalized eigenvalues of (B, A).
double ai_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
/// A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}.
Eigen::MatrixXd ai_interpolate(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double t);

/// √(tr A + tr B − 2 tr (A^{1/2} B A^{1/2})^{1/2}); accepts PSD inputs.
double bw_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
/// ((1−t)I + tT) A ((1−t)I + tT) with T = A^{-1/2}(A^{1/2} B A^{1/2})^{1/2} A^{-1/2}.
Eigen::MatrixXd bw_interpolate(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double t);

/// SPD(d) with the affine-invariant metric; a Hadamard space (κ = 0).
class SpdAffineInvariant {
public:
    using Point = SpdMatrix;

    explicit SpdAffineInvariant(Eigen::Index dim);

    Eigen::Index dimension() const { return dim_; }
    CurvatureBound curvature() const { return CurvatureBound::of(0.0); }

    double distance(const SpdMatrix& a, const SpdMatrix& b) const;
    SpdMatrix interpolate(const SpdMatrix& a, const SpdMatrix& b, double t) const;

private:
    void check(const SpdMatrix& m) const;

    Eigen::Index dim_;
};

/// SPD(d) with the Bures–Wasserstein metric. The space is non-negatively
/// curved; restricted to matrices with smallest eigenvalue ≥ λ₀ it is
/// CAT(κ) with κ = 3/(2λ₀²), which is the bound reported here. Geodesics
/// between positive-definite matrices are unique regardless of the floor.
class SpdBuresWasserstein {
public:
    using Point = SpdMatrix;

    SpdBuresWasserstein(Eigen::Index dim, double eigenvalue_floor);

    Eigen::Index dimension() const { return dim_; }
    double eigenvalue_floor() const { return floor_; }
    CurvatureBound curvature() const { return CurvatureBound::of(3.0 / (2.0 * floor_ * floor_)); }

    double distance(const SpdMatrix& a, const SpdMatrix& b) const;
    SpdMatrix interpolate(const SpdMatrix& a, const SpdMatrix& b, double t) const;

    bool satisfies_floor(const SpdMatrix& m) const { return m.smallest_eigenvalue() >= floor_; }

private:
    void check(const SpdMatrix& m) const;

    Eigen::Index dim_;
    double floor_;
};

}  // namespace fmoe::spaces
