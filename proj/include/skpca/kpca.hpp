#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "skpca/kernels.hpp"
#include "skpca/spectral.hpp"

namespace skpca {

// Constrained KPCA: for each k the problem
//   min_w  1/2 <w,w> - gamma/2 sum_i e_i^2,   e_i = <w, phi(x_i)>,
//   s.t.   w orthogonal to the k leading components
// is convex exactly when gamma <= 1/lambda_{k+1}. Below that value only w = 0
// solves it; at the boundary the solutions are the multiples of the (k+1)-th
// component; above it the objective is unbounded from below.

enum class Regime { TrivialOnly, EigencomponentSolutions, Unbounded };

const char* to_string(Regime regime) noexcept;

/// Relative width of the band around 1/lambda_{k+1} that counts as "at the boundary".
inline constexpr double kRegimeTolerance = 1e-9;

struct KpcaRegime {
    std::size_t k = 0;
    double gamma = 0.0;
    double critical_gamma = 0.0;  // 1/lambda_{k+1}; +inf when lambda_{k+1} == 0
    Regime regime = Regime::TrivialOnly;
    double certificate = 0.0;     // smallest eigenvalue of I - gamma * Kp
};

/// Requires 0 <= k < N and gamma > 0.
KpcaRegime classify_regime(const KernelMatrix& K, std::size_t k, double gamma);
KpcaRegime classify_regime(const DeflatedKernel& deflated, double gamma);

struct ComponentScores {
    std::size_t component_index = 0;  // k + 1
    double eigenvalue = 0.0;
    Eigen::VectorXd scores;            // unit norm, eigenvector sign convention
};

/// The (k+1)-th kernel eigenvector as a score vector. Throws RankDeficient
/// when lambda_{k+1} <= 1e-10 * lambda_1.
ComponentScores principal_scores(const KernelMatrix& K, std::size_t k);
ComponentScores principal_scores(const Eigendecomposition& full, std::size_t k);

/// Objective reduced to dual coordinates, w = sum_j alpha_j phi(x_j) with the
/// k leading directions projected out:
///   1/2 alpha^T Kp alpha - gamma/2 alpha^T Kp^2 alpha.
double kpca_objective(const KernelMatrix& K, const Eigen::VectorXd& alpha, double gamma,
                      std::size_t k);
double kpca_objective(const DeflatedKernel& deflated, const Eigen::VectorXd& alpha, double gamma);

}  // namespace skpca
