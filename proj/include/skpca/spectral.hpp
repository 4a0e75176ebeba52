#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "skpca/kernels.hpp"

namespace skpca {

/// Full eigensystem of a symmetric matrix, eigenvalues in descending order.
///
/// Each eigenvector has unit norm and its entry of largest magnitude is
/// positive (the lowest index wins on exact ties). Eigenvalues that agree to
/// a relative 1e-10 are ordered by the position of that entry, so repeated
/// runs on the same input give bitwise-identical output.
struct Eigendecomposition {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;  // column l pairs with values[l]
};

/// Dense symmetric eigensolver (Householder tridiagonalisation followed by
/// implicit symmetric QR). Throws ConvergenceFailure when the QR sweep does
/// not converge within 30 iterations per eigenvalue.
Eigendecomposition eig_sym(const Eigen::MatrixXd& symmetric);
Eigendecomposition eig_sym(const KernelMatrix& K);

/// The k leading eigenpairs of a PSD kernel matrix plus the (k+1)-th eigenvalue.
struct SpectrumTopK {
    std::size_t k = 0;
    Eigen::VectorXd eigenvalues;   // lambda_1 >= ... >= lambda_k, clamped to >= 0
    Eigen::MatrixXd eigenvectors;  // N x k, orthonormal columns
    double next_eigenvalue = 0.0;  // lambda_{k+1}
    double leading_eigenvalue = 0.0;  // lambda_1, kept for k = 0

    Eigen::Index size() const { return eigenvectors.rows(); }
};

/// Eigenvalues below -kNegativeTolerance * max(1, lambda_1) make top_k throw NotPSD;
/// anything between that and 0 is clamped to 0.
inline constexpr double kNegativeTolerance = 1e-10;

/// Requires 0 <= k < N.
SpectrumTopK top_k(const KernelMatrix& K, std::size_t k);

/// Same as above, reusing an eigensystem computed once for several k.
SpectrumTopK top_k(const Eigendecomposition& full, std::size_t k);

/// K with its k leading eigencomponents removed: K - sum_l lambda_l u_l u_l^T.
class DeflatedKernel {
public:
    DeflatedKernel(Eigen::MatrixXd kp, SpectrumTopK spectrum);

    const Eigen::MatrixXd& matrix() const { return kp_; }
    std::size_t k() const { return spectrum_.k; }
    const SpectrumTopK& spectrum() const { return spectrum_; }
    Eigen::Index size() const { return kp_.rows(); }

private:
    Eigen::MatrixXd kp_;
    SpectrumTopK spectrum_;
};

/// Throws SourceMismatch if `spectrum` was computed for a matrix of another size.
DeflatedKernel deflate(const KernelMatrix& K, const SpectrumTopK& spectrum);

/// Rows are phi(x_i) for the explicit finite feature map of a linear or
/// polynomial kernel, so that Phi * Phi^T equals the Gram matrix. Accepts any
/// number of points, including one.
Eigen::MatrixXd explicit_feature_map(const Eigen::MatrixXd& points, const KernelSpec& spec);

/// Non-zero (> 1e-10 * lambda_max) eigenvalues of sum_i phi(x_i) phi(x_i)^T,
/// descending. Throws NotExplicitFeatureMap for Gaussian kernels.
Eigen::VectorXd covariance_spectrum(const Eigen::MatrixXd& points, const KernelSpec& spec);
Eigen::VectorXd covariance_spectrum(const DataMatrix& data, const KernelSpec& spec);

}  // namespace skpca
