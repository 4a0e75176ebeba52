#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "skpca/kernels.hpp"
#include "skpca/spectral.hpp"

namespace skpca {

/// Targets in {-1, 0, +1}; 0 marks an unlabeled point.
class LabelVector {
public:
    explicit LabelVector(std::vector<int> labels);

    static LabelVector zeros(std::size_t n) { return LabelVector(std::vector<int>(n, 0)); }

    std::size_t size() const { return labels_.size(); }
    std::size_t labeled_count() const { return labeled_; }
    int operator[](std::size_t i) const { return labels_[i]; }
    const std::vector<int>& labels() const { return labels_; }
    Eigen::VectorXd as_vector() const;

private:
    std::vector<int> labels_;
    std::size_t labeled_ = 0;
};

/// sign with sign(0) := +1.
int sign_label(double value) noexcept;
std::vector<int> sign_labels(const Eigen::VectorXd& values);

struct SemiKpcaModel {
    Eigen::VectorXd alpha;
    double gamma = 0.0;
    std::size_t k = 0;
    double critical_gamma = 0.0;
    Eigen::VectorXd decision_values;  // Kp * alpha
};

/// True when gamma lies strictly inside the convex interval,
/// i.e. gamma < (1 - 1e-12) / lambda_{k+1}. Always true when lambda_{k+1} == 0.
bool within_convex_interval(double gamma, double next_eigenvalue) noexcept;

/// Factorisation of (I/gamma - Kp), reusable across label vectors. Holds a
/// reference to `deflated`, which must outlive the solver.
class SemiKpcaSolver {
public:
    /// Throws UnboundedProblem outside the convex interval and SolveFailure
    /// when the factorisation breaks down.
    SemiKpcaSolver(const DeflatedKernel& deflated, double gamma);

    SemiKpcaModel solve(const LabelVector& y) const;
    double gamma() const { return gamma_; }

private:
    const DeflatedKernel* deflated_;
    double gamma_;
    Eigen::LLT<Eigen::MatrixXd> factor_;
};

/// Solves (I/gamma - Kp) alpha = y with a Cholesky factorisation.
SemiKpcaModel fit(const DeflatedKernel& deflated, const LabelVector& y, double gamma);

std::vector<int> predict(const SemiKpcaModel& model);

struct ConvexInterval {
    double lower = 0.0;
    double upper = 0.0;  // open bound 1/lambda_{k+1}
};

/// Throws RankDeficient when lambda_{k+1} <= 1e-12 * lambda_1.
ConvexInterval convex_interval(const SpectrumTopK& spectrum);

struct HeuristicGamma {
    double value = 0.0;
    bool degenerate = false;  // lambda_1 == lambda_{k+1}: the interval has collapsed
};

/// Midpoint in log scale of the convex range. For k >= 1 that is
/// sqrt(1/lambda_1 * 1/lambda_{k+1}); for k = 0 the lower end is floored at
/// 1e-3/lambda_1.
HeuristicGamma heuristic_gamma(const SpectrumTopK& spectrum);

/// Lower end of search grids, relative to 1/lambda_1.
inline constexpr double kGammaFloor = 1e-3;
/// Grid points and degenerate heuristics stay this far inside the boundary.
inline constexpr double kBoundaryShrink = 1e-6;

/// `count` log-spaced values from 1e-3/lambda_1 to (1 - 1e-6)/lambda_{k+1}.
std::vector<double> semikpca_gamma_grid(const SpectrumTopK& spectrum, std::size_t count);

struct FixedGamma {
    double value = 0.0;
};
struct HeuristicMidpoint {};
struct GridBest {
    std::size_t size = 40;
};
using GammaPolicy = std::variant<FixedGamma, HeuristicMidpoint, GridBest>;

struct PipelineDiagnostics {
    double bandwidth = 0.0;
    double leading_eigenvalue = 0.0;
    double next_eigenvalue = 0.0;
    double critical_gamma = 0.0;
    std::vector<std::string> warnings;
};

struct PipelineResult {
    std::vector<int> predictions;
    double gamma = 0.0;
    Eigen::VectorXd decision_values;
    PipelineDiagnostics diagnostics;
};

/// Fraction of unlabeled points (y == 0) whose prediction matches `truth`.
double unlabeled_accuracy(const std::vector<int>& predictions, const LabelVector& y,
                          const std::vector<int>& truth);

/// gram -> top_k -> guard -> deflate -> fit -> predict. GridBest needs the
/// ground truth and picks the grid value with the best unlabeled accuracy
/// (the smallest gamma among ties). Errors carry the stage that raised them.
PipelineResult fit_predict_pipeline(const DataMatrix& data, const LabelVector& y,
                                    const KernelSpec& spec, std::size_t k,
                                    const GammaPolicy& policy,
                                    const std::optional<std::vector<int>>& truth = std::nullopt);

}  // namespace skpca
