#include "skpca/semikpca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "skpca/error.hpp"

namespace skpca {

namespace {

constexpr double kGuardSlack = 1e-12;
constexpr double kResidualTolerance = 1e-8;

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        rethrow_with_context(e, name);
    }
}

}  // namespace

LabelVector::LabelVector(std::vector<int> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        const int v = labels_[i];
        if (v != -1 && v != 0 && v != 1)
            fail(ErrorCode::InvalidArgument,
                 "label " + std::to_string(v) + " at index " + std::to_string(i) + " not in {-1,0,+1}");
        if (v != 0) ++labeled_;
    }
}

Eigen::VectorXd LabelVector::as_vector() const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(labels_.size()));
    for (std::size_t i = 0; i < labels_.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = labels_[i];
    return out;
}

int sign_label(double value) noexcept { return value < 0.0 ? -1 : 1; }

std::vector<int> sign_labels(const Eigen::VectorXd& values) {
    std::vector<int> out(static_cast<std::size_t>(values.size()));
    for (Eigen::Index i = 0; i < values.size(); ++i)
        out[static_cast<std::size_t>(i)] = sign_label(values[i]);
    return out;
}

bool within_convex_interval(double gamma, double next_eigenvalue) noexcept {
#ifdef SKPCA_FAULT_GUARD_SIGN
    // Mutation used by the property-suite self test: the comparison is flipped.
    return gamma * next_eigenvalue > 1.0 - kGuardSlack;
#else
    return gamma * next_eigenvalue < 1.0 - kGuardSlack;
#endif
}

SemiKpcaSolver::SemiKpcaSolver(const DeflatedKernel& deflated, double gamma)
    : deflated_(&deflated), gamma_(gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        fail(ErrorCode::InvalidArgument, "gamma must be positive and finite");
    const double next = deflated.spectrum().next_eigenvalue;
    if (!within_convex_interval(gamma, next)) {
        std::ostringstream os;
        os << "gamma=" << gamma << " is not below 1/lambda_" << deflated.k() + 1 << "="
           << (next > 0.0 ? 1.0 / next : std::numeric_limits<double>::infinity());
        fail(ErrorCode::UnboundedProblem, os.str());
    }

    Eigen::MatrixXd system = -deflated.matrix();
    system.diagonal().array() += 1.0 / gamma;
    factor_.compute(system);
    if (factor_.info() != Eigen::Success)
        fail(ErrorCode::SolveFailure, "Cholesky factorisation of I/gamma - Kp failed");
}

SemiKpcaModel SemiKpcaSolver::solve(const LabelVector& y) const {
    const Eigen::MatrixXd& kp = deflated_->matrix();
    if (static_cast<Eigen::Index>(y.size()) != kp.rows())
        fail(ErrorCode::DimensionMismatch, "label vector has length " + std::to_string(y.size()) +
                                               ", kernel has N=" + std::to_string(kp.rows()));
    const Eigen::VectorXd target = y.as_vector();

    SemiKpcaModel model;
    model.gamma = gamma_;
    model.k = deflated_->k();
    const double next = deflated_->spectrum().next_eigenvalue;
    model.critical_gamma = next > 0.0 ? 1.0 / next : std::numeric_limits<double>::infinity();
    model.alpha = factor_.solve(target);

    // Up to two steps of iterative refinement near the boundary, where the system is
    // poorly conditioned. There the rounding error of a double residual is as large
    // as the tolerance itself, so refinement accumulates in long double.
    const double bound = kResidualTolerance * target.norm();
    const double inv_gamma = 1.0 / gamma_;
    auto residual = [&](const Eigen::VectorXd& a) -> Eigen::VectorXd {
        Eigen::VectorXd r(a.size());
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            long double s = static_cast<long double>(a[i]) * inv_gamma - target[i];
            for (Eigen::Index j = 0; j < a.size(); ++j)
                s -= static_cast<long double>(kp(i, j)) * a[j];
            r[i] = static_cast<double>(s);
        }
        return r;
    };
    if ((model.alpha * inv_gamma - kp * model.alpha - target).norm() > bound) {
        Eigen::VectorXd r = residual(model.alpha);
        for (int step = 0; step < 2 && r.norm() > bound; ++step) {
            model.alpha -= factor_.solve(r);
            r = residual(model.alpha);
        }
        if (r.norm() > bound)
            fail(ErrorCode::SolveFailure, "residual " + std::to_string(r.norm()) + " exceeds tolerance");
    }
    if (!model.alpha.allFinite()) fail(ErrorCode::SolveFailure, "non-finite solution");

    model.decision_values = kp * model.alpha;
    return model;
}

SemiKpcaModel fit(const DeflatedKernel& deflated, const LabelVector& y, double gamma) {
    return SemiKpcaSolver(deflated, gamma).solve(y);
}

std::vector<int> predict(const SemiKpcaModel& model) { return sign_labels(model.decision_values); }

ConvexInterval convex_interval(const SpectrumTopK& spectrum) {
    if (!(spectrum.next_eigenvalue > 1e-12 * spectrum.leading_eigenvalue) ||
        !(spectrum.next_eigenvalue > 0.0))
        fail(ErrorCode::RankDeficient, "lambda_" + std::to_string(spectrum.k + 1) +
                                           " is numerically zero; the interval is unbounded");
    return ConvexInterval{0.0, 1.0 / spectrum.next_eigenvalue};
}

HeuristicGamma heuristic_gamma(const SpectrumTopK& spectrum) {
    const double upper = convex_interval(spectrum).upper;
    const double inv_leading = 1.0 / spectrum.leading_eigenvalue;
    HeuristicGamma out;
    if (spectrum.k == 0) {
        out.value = std::sqrt(kGammaFloor * inv_leading * upper);
    } else {
        out.value = std::sqrt(inv_leading * upper);
        out.degenerate = spectrum.leading_eigenvalue - spectrum.next_eigenvalue <=
                         1e-10 * spectrum.leading_eigenvalue;
    }
    return out;
}

std::vector<double> semikpca_gamma_grid(const SpectrumTopK& spectrum, std::size_t count) {
    if (count == 0) fail(ErrorCode::InvalidArgument, "grid needs at least one point");
    const double upper = (1.0 - kBoundaryShrink) * convex_interval(spectrum).upper;
    const double lower = kGammaFloor / spectrum.leading_eigenvalue;
    std::vector<double> grid(count);
    if (count == 1) {
        grid[0] = std::sqrt(lower * upper);
        return grid;
    }
    const double log_lo = std::log(lower);
    const double step = (std::log(upper) - log_lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = std::exp(log_lo + step * static_cast<double>(i));
    grid.back() = upper;
    return grid;
}

double unlabeled_accuracy(const std::vector<int>& predictions, const LabelVector& y,
                          const std::vector<int>& truth) {
    if (predictions.size() != y.size() || truth.size() != y.size())
        fail(ErrorCode::DimensionMismatch, "predictions, labels and truth differ in length");
    std::size_t total = 0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] != 0) continue;
        ++total;
        if (predictions[i] == truth[i]) ++correct;
    }
    if (total == 0) return 1.0;
    return static_cast<double>(correct) / static_cast<double>(total);
}

PipelineResult fit_predict_pipeline(const DataMatrix& data, const LabelVector& y,
                                    const KernelSpec& spec, std::size_t k,
                                    const GammaPolicy& policy,
                                    const std::optional<std::vector<int>>& truth) {
    if (static_cast<Eigen::Index>(y.size()) != data.rows())
        fail(ErrorCode::DimensionMismatch, "labels and data differ in length");

    PipelineResult result;
    const KernelMatrix K = stage("gram", [&] { return gram(data, spec); });
    result.diagnostics.bandwidth = K.spec().bandwidth.value_or(0.0);
    const SpectrumTopK spectrum = stage("top_k", [&] { return top_k(K, k); });
    result.diagnostics.leading_eigenvalue = spectrum.leading_eigenvalue;
    result.diagnostics.next_eigenvalue = spectrum.next_eigenvalue;
    result.diagnostics.critical_gamma = spectrum.next_eigenvalue > 0.0
                                            ? 1.0 / spectrum.next_eigenvalue
                                            : std::numeric_limits<double>::infinity();

    std::vector<double> candidates;
    if (const auto* fixed = std::get_if<FixedGamma>(&policy)) {
        candidates.push_back(fixed->value);
    } else if (std::holds_alternative<HeuristicMidpoint>(policy)) {
        const HeuristicGamma h = stage("heuristic_gamma", [&] { return heuristic_gamma(spectrum); });
        double g = h.value;
        if (h.degenerate || !within_convex_interval(g, spectrum.next_eigenvalue)) {
            g = (1.0 - kBoundaryShrink) / spectrum.next_eigenvalue;
            result.diagnostics.warnings.push_back(
                "convex interval collapsed (lambda_1 == lambda_k+1); heuristic gamma shrunk inside the boundary");
        }
        candidates.push_back(g);
    } else {
        const auto& grid = std::get<GridBest>(policy);
        if (!truth)
            fail(ErrorCode::InvalidArgument, "GridBest needs ground-truth labels to score the grid");
        candidates = stage("grid", [&] { return semikpca_gamma_grid(spectrum, grid.size); });
    }

    // Algorithm guard: refuse any gamma outside the convex interval before deflating.
    for (double g : candidates) {
        if (!within_convex_interval(g, spectrum.next_eigenvalue))
            stage("guard", [&] {
                fail(ErrorCode::UnboundedProblem, "gamma=" + std::to_string(g) +
                                                      " is outside the convex interval");
            });
    }

    const DeflatedKernel deflated = stage("deflate", [&] { return deflate(K, spectrum); });

    double best_accuracy = -1.0;
    for (double g : candidates) {
        const SemiKpcaModel model = stage("fit", [&] { return fit(deflated, y, g); });
        std::vector<int> predictions = predict(model);
        const double accuracy = truth ? unlabeled_accuracy(predictions, y, *truth) : 0.0;
        if (accuracy > best_accuracy) {
            best_accuracy = accuracy;
            result.gamma = g;
            result.predictions = std::move(predictions);
            result.decision_values = model.decision_values;
        }
    }
    return result;
}

}  // namespace skpca
