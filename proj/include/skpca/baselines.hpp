#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "skpca/kernels.hpp"
#include "skpca/semikpca.hpp"

namespace skpca {

// LS-SVM without bias term: minimise 1/2 w^T w + gamma/2 sum e_i^2 subject to
// y_i = w^T phi(x_i) + e_i, whose dual is (K + I/gamma) alpha = y.

enum class LssvmMode {
    SemiZeroTarget,  // every point is a training point, unlabeled ones with target 0
    LabeledSubset,   // only the labeled points are training points
};

struct LssvmModel {
    Eigen::VectorXd alpha;         // one entry per training point
    double gamma = 0.0;
    LssvmMode mode = LssvmMode::SemiZeroTarget;
    std::vector<std::size_t> training_indices;
    Eigen::VectorXd decision_values;  // over all N points
};

/// Factorisation of (K + I/gamma) shared by several label vectors.
class SemiLssvmSolver {
public:
    SemiLssvmSolver(const KernelMatrix& K, double gamma);
    LssvmModel solve(const LabelVector& y) const;

private:
    const KernelMatrix* K_;
    double gamma_;
    Eigen::LLT<Eigen::MatrixXd> factor_;
};

LssvmModel fit_semi_lssvm(const KernelMatrix& K, const LabelVector& y, double gamma);

/// Trains on the labeled points only and scores every point through
/// gram_cross. A median-heuristic spec is resolved on the full data set.
LssvmModel fit_subs_lssvm(const DataMatrix& data, const LabelVector& y, const KernelSpec& spec,
                          double gamma);

/// Same model taken from blocks of an already computed full Gram matrix.
LssvmModel fit_subs_lssvm(const KernelMatrix& K, const LabelVector& y, double gamma);

std::vector<int> predict(const LssvmModel& model);

/// 10 d / N for the semi-supervised variant, 100 d / N for the subsample one.
double fixed_gamma_rule(LssvmMode mode, std::size_t d, std::size_t n);

/// `count` log-spaced values over [1e-3 d/N, 1e3 d/N].
std::vector<double> lssvm_gamma_grid(std::size_t d, std::size_t n, std::size_t count);

}  // namespace skpca
