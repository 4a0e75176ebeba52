#include "skpca/baselines.hpp"

#include <cmath>

#include "skpca/error.hpp"

namespace skpca {

namespace {

void check_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        fail(ErrorCode::InvalidArgument, "gamma must be positive and finite");
}

std::vector<std::size_t> labeled_indices(const LabelVector& y) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] != 0) out.push_back(i);
    if (out.empty()) fail(ErrorCode::NoLabels, "no labeled points to train on");
    return out;
}

Eigen::VectorXd solve_checked(const Eigen::LLT<Eigen::MatrixXd>& factor,
                              const Eigen::MatrixXd& system, const Eigen::VectorXd& target) {
    Eigen::VectorXd alpha = factor.solve(target);
    const double residual = (system * alpha - target).norm();
    if (!alpha.allFinite() || residual > 1e-8 * target.norm())
        fail(ErrorCode::SolveFailure, "LS-SVM residual " + std::to_string(residual) + " too large");
    return alpha;
}

LssvmModel fit_subset(const Eigen::MatrixXd& k_ll, const Eigen::MatrixXd& k_all_l,
                      const LabelVector& y, std::vector<std::size_t> indices, double gamma) {
    Eigen::VectorXd target(static_cast<Eigen::Index>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j)
        target[static_cast<Eigen::Index>(j)] = y[indices[j]];

    Eigen::MatrixXd system = k_ll;
    system.diagonal().array() += 1.0 / gamma;
    Eigen::LLT<Eigen::MatrixXd> factor(system);
    if (factor.info() != Eigen::Success)
        fail(ErrorCode::SolveFailure, "Cholesky factorisation of K_LL + I/gamma failed");

    LssvmModel model;
    model.gamma = gamma;
    model.mode = LssvmMode::LabeledSubset;
    model.alpha = solve_checked(factor, system, target);
    model.training_indices = std::move(indices);
    model.decision_values = k_all_l * model.alpha;
    return model;
}

}  // namespace

SemiLssvmSolver::SemiLssvmSolver(const KernelMatrix& K, double gamma) : K_(&K), gamma_(gamma) {
    check_gamma(gamma);
    Eigen::MatrixXd system = K.matrix();
    system.diagonal().array() += 1.0 / gamma;
    factor_.compute(system);
    if (factor_.info() != Eigen::Success)
        fail(ErrorCode::SolveFailure, "Cholesky factorisation of K + I/gamma failed");
}

LssvmModel SemiLssvmSolver::solve(const LabelVector& y) const {
    const Eigen::MatrixXd& K = K_->matrix();
    if (static_cast<Eigen::Index>(y.size()) != K.rows())
        fail(ErrorCode::DimensionMismatch, "label vector length differs from N");
    const Eigen::VectorXd target = y.as_vector();

    LssvmModel model;
    model.gamma = gamma_;
    model.mode = LssvmMode::SemiZeroTarget;
    model.alpha = factor_.solve(target);
    const Eigen::VectorXd residual = K * model.alpha + model.alpha / gamma_ - target;
    if (!model.alpha.allFinite() || residual.norm() > 1e-8 * target.norm())
        fail(ErrorCode::SolveFailure, "LS-SVM residual too large");
    model.training_indices.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) model.training_indices[i] = i;
    model.decision_values = K * model.alpha;
    return model;
}

LssvmModel fit_semi_lssvm(const KernelMatrix& K, const LabelVector& y, double gamma) {
    return SemiLssvmSolver(K, gamma).solve(y);
}

LssvmModel fit_subs_lssvm(const DataMatrix& data, const LabelVector& y, const KernelSpec& spec,
                          double gamma) {
    check_gamma(gamma);
    if (static_cast<Eigen::Index>(y.size()) != data.rows())
        fail(ErrorCode::DimensionMismatch, "label vector length differs from N");
    std::vector<std::size_t> indices = labeled_indices(y);
    const KernelSpec resolved = resolve_bandwidth(spec, data);

    const auto count = static_cast<Eigen::Index>(indices.size());
    Eigen::MatrixXd labeled_points(count, data.cols());
    for (Eigen::Index j = 0; j < count; ++j)
        labeled_points.row(j) = data.row(static_cast<Eigen::Index>(indices[static_cast<std::size_t>(j)]));

    // gram_cross(train=labeled, test=all) gives K_{all,L}; its labeled rows are K_LL.
    Eigen::MatrixXd k_all_l;
    if (count >= 2) {
        k_all_l = gram_cross(DataMatrix(labeled_points), data.values(), resolved);
    } else {
        k_all_l.resize(data.rows(), 1);
        for (Eigen::Index i = 0; i < data.rows(); ++i)
            k_all_l(i, 0) = kernel_value(resolved, data.row(i), labeled_points.row(0));
    }
    Eigen::MatrixXd k_ll(count, count);
    for (Eigen::Index j = 0; j < count; ++j)
        k_ll.row(j) = k_all_l.row(static_cast<Eigen::Index>(indices[static_cast<std::size_t>(j)]));
    k_ll = 0.5 * (k_ll + k_ll.transpose()).eval();
    return fit_subset(k_ll, k_all_l, y, std::move(indices), gamma);
}

LssvmModel fit_subs_lssvm(const KernelMatrix& K, const LabelVector& y, double gamma) {
    check_gamma(gamma);
    if (static_cast<Eigen::Index>(y.size()) != K.size())
        fail(ErrorCode::DimensionMismatch, "label vector length differs from N");
    std::vector<std::size_t> indices = labeled_indices(y);
    const auto count = static_cast<Eigen::Index>(indices.size());
    Eigen::MatrixXd k_all_l(K.size(), count);
    for (Eigen::Index j = 0; j < count; ++j)
        k_all_l.col(j) = K.matrix().col(static_cast<Eigen::Index>(indices[static_cast<std::size_t>(j)]));
    Eigen::MatrixXd k_ll(count, count);
    for (Eigen::Index j = 0; j < count; ++j)
        k_ll.row(j) = k_all_l.row(static_cast<Eigen::Index>(indices[static_cast<std::size_t>(j)]));
    return fit_subset(k_ll, k_all_l, y, std::move(indices), gamma);
}

std::vector<int> predict(const LssvmModel& model) { return sign_labels(model.decision_values); }

double fixed_gamma_rule(LssvmMode mode, std::size_t d, std::size_t n) {
    if (d == 0 || n == 0) fail(ErrorCode::InvalidArgument, "d and N must be positive");
    const double scale = mode == LssvmMode::SemiZeroTarget ? 10.0 : 100.0;
    return scale * static_cast<double>(d) / static_cast<double>(n);
}

std::vector<double> lssvm_gamma_grid(std::size_t d, std::size_t n, std::size_t count) {
    if (count == 0) fail(ErrorCode::InvalidArgument, "grid needs at least one point");
    const double base = static_cast<double>(d) / static_cast<double>(n);
    std::vector<double> grid(count);
    if (count == 1) {
        grid[0] = base;
        return grid;
    }
    const double log_lo = std::log(1e-3 * base);
    const double step = (std::log(1e3 * base) - log_lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = std::exp(log_lo + step * static_cast<double>(i));
    return grid;
}

}  // namespace skpca
