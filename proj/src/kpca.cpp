#include "skpca/kpca.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "skpca/error.hpp"

namespace skpca {

const char* to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::TrivialOnly: return "TrivialOnly";
        case Regime::EigencomponentSolutions: return "EigencomponentSolutions";
        case Regime::Unbounded: return "Unbounded";
    }
    return "Unknown";
}

KpcaRegime classify_regime(const DeflatedKernel& deflated, double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        fail(ErrorCode::InvalidArgument, "gamma must be positive and finite");

    KpcaRegime out;
    out.k = deflated.k();
    out.gamma = gamma;
    const double next = deflated.spectrum().next_eigenvalue;
    out.critical_gamma = next > 0.0 ? 1.0 / next : std::numeric_limits<double>::infinity();

    if (!std::isfinite(out.critical_gamma))
        out.regime = Regime::TrivialOnly;
    else if (std::abs(gamma - out.critical_gamma) <= kRegimeTolerance * out.critical_gamma)
        out.regime = Regime::EigencomponentSolutions;
    else if (gamma < out.critical_gamma)
        out.regime = Regime::TrivialOnly;
    else
        out.regime = Regime::Unbounded;

    const Eigen::Index n = deflated.size();
    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - gamma * deflated.matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(system, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        fail(ErrorCode::ConvergenceFailure, "certificate eigensolve did not converge");
    out.certificate = solver.eigenvalues()[0];
    return out;
}

KpcaRegime classify_regime(const KernelMatrix& K, std::size_t k, double gamma) {
    return classify_regime(deflate(K, top_k(K, k)), gamma);
}

ComponentScores principal_scores(const Eigendecomposition& full, std::size_t k) {
    const SpectrumTopK spectrum = top_k(full, k);
    if (!(spectrum.next_eigenvalue > 1e-10 * spectrum.leading_eigenvalue))
        fail(ErrorCode::RankDeficient,
             "component " + std::to_string(k + 1) + " lies in the numerical null space");
    ComponentScores out;
    out.component_index = k + 1;
    out.eigenvalue = spectrum.next_eigenvalue;
    out.scores = full.vectors.col(static_cast<Eigen::Index>(k));
    return out;
}

ComponentScores principal_scores(const KernelMatrix& K, std::size_t k) {
    if (k >= static_cast<std::size_t>(K.size()))
        fail(ErrorCode::InvalidArgument, "k must be smaller than N");
    return principal_scores(eig_sym(K), k);
}

double kpca_objective(const DeflatedKernel& deflated, const Eigen::VectorXd& alpha, double gamma) {
    if (alpha.size() != deflated.size())
        fail(ErrorCode::DimensionMismatch, "alpha has length " + std::to_string(alpha.size()) +
                                               ", kernel has N=" + std::to_string(deflated.size()));
    const Eigen::VectorXd projected = deflated.matrix() * alpha;  // e = Kp alpha
    return 0.5 * alpha.dot(projected) - 0.5 * gamma * projected.squaredNorm();
}

double kpca_objective(const KernelMatrix& K, const Eigen::VectorXd& alpha, double gamma,
                      std::size_t k) {
    if (alpha.size() != K.size())
        fail(ErrorCode::DimensionMismatch, "alpha has length " + std::to_string(alpha.size()) +
                                               ", kernel has N=" + std::to_string(K.size()));
    return kpca_objective(deflate(K, top_k(K, k)), alpha, gamma);
}

}  // namespace skpca
