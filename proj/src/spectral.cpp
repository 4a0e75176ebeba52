#include "skpca/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "skpca/error.hpp"

namespace skpca {

namespace {

// Index of the entry of largest magnitude; the first one wins on exact ties.
Eigen::Index dominant_index(const Eigen::Ref<const Eigen::VectorXd>& v) {
    Eigen::Index best = 0;
    double best_abs = std::abs(v[0]);
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    return best;
}

bool nearly_equal(double a, double b, double scale) {
    return std::abs(a - b) <= 1e-10 * scale;
}

// Enumerate exponent vectors of `parts` non-negative entries summing to `total`.
void for_each_multi_index(int parts, int total, std::vector<int>& current, int position,
                          const auto& visit) {
    if (position == parts - 1) {
        current[static_cast<std::size_t>(position)] = total;
        visit(current);
        return;
    }
    for (int e = total; e >= 0; --e) {
        current[static_cast<std::size_t>(position)] = e;
        for_each_multi_index(parts, total - e, current, position + 1, visit);
    }
}

}  // namespace

Eigendecomposition eig_sym(const Eigen::MatrixXd& symmetric) {
    if (symmetric.rows() != symmetric.cols() || symmetric.rows() == 0)
        fail(ErrorCode::DimensionMismatch, "eig_sym needs a non-empty square matrix");
    if (!symmetric.allFinite()) fail(ErrorCode::NonFiniteEntry, "eig_sym input has NaN or Inf");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        fail(ErrorCode::ConvergenceFailure, "symmetric QR iteration did not converge");

    const Eigen::Index n = symmetric.rows();
    Eigen::VectorXd values = solver.eigenvalues().reverse();
    Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();

    std::vector<Eigen::Index> dominant(static_cast<std::size_t>(n));
    for (Eigen::Index l = 0; l < n; ++l) {
        auto col = vectors.col(l);
        col.normalize();
        const Eigen::Index idx = dominant_index(col);
        if (col[idx] < 0.0) col = -col;
        dominant[static_cast<std::size_t>(l)] = idx;
    }

    // Within each run of (numerically) equal eigenvalues order the vectors by
    // where their dominant entry sits.
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    for (Eigen::Index start = 0; start < n;) {
        Eigen::Index end = start + 1;
        while (end < n && nearly_equal(values[end], values[start], scale)) ++end;
        std::stable_sort(order.begin() + start, order.begin() + end,
                         [&](Eigen::Index a, Eigen::Index b) {
                             return dominant[static_cast<std::size_t>(a)] <
                                    dominant[static_cast<std::size_t>(b)];
                         });
        start = end;
    }

    Eigendecomposition out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index l = 0; l < n; ++l) {
        const Eigen::Index src = order[static_cast<std::size_t>(l)];
        out.values[l] = values[src];
        out.vectors.col(l) = vectors.col(src);
    }
    return out;
}

Eigendecomposition eig_sym(const KernelMatrix& K) { return eig_sym(K.matrix()); }

SpectrumTopK top_k(const Eigendecomposition& full, std::size_t k) {
    const auto n = static_cast<std::size_t>(full.values.size());
    if (k >= n)
        fail(ErrorCode::InvalidArgument,
             "k must be smaller than N (k=" + std::to_string(k) + ", N=" + std::to_string(n) + ")");

    const double lambda_max = full.values[0];
    const double tolerance = kNegativeTolerance * std::max(1.0, lambda_max);
    const double lambda_min = full.values[full.values.size() - 1];
    if (lambda_min < -tolerance)
        fail(ErrorCode::NotPSD, "kernel matrix has eigenvalue " + std::to_string(lambda_min));

    const auto keep = static_cast<Eigen::Index>(k);
    SpectrumTopK out;
    out.k = k;
    out.eigenvalues = full.values.head(keep).cwiseMax(0.0);
    out.eigenvectors = full.vectors.leftCols(keep);
    out.next_eigenvalue = std::max(0.0, full.values[keep]);
    out.leading_eigenvalue = std::max(0.0, lambda_max);
    return out;
}

SpectrumTopK top_k(const KernelMatrix& K, std::size_t k) {
    if (k >= static_cast<std::size_t>(K.size()))
        fail(ErrorCode::InvalidArgument, "k must be smaller than N");
    return top_k(eig_sym(K), k);
}

DeflatedKernel::DeflatedKernel(Eigen::MatrixXd kp, SpectrumTopK spectrum)
    : kp_(std::move(kp)), spectrum_(std::move(spectrum)) {}

DeflatedKernel deflate(const KernelMatrix& K, const SpectrumTopK& spectrum) {
    if (spectrum.size() != K.size())
        fail(ErrorCode::SourceMismatch, "spectrum has " + std::to_string(spectrum.size()) +
                                            " rows, kernel has " + std::to_string(K.size()));
    if (static_cast<Eigen::Index>(spectrum.k) != spectrum.eigenvalues.size() ||
        static_cast<Eigen::Index>(spectrum.k) >= K.size())
        fail(ErrorCode::SourceMismatch, "spectrum does not fit this kernel matrix");

    if (spectrum.k == 0) return DeflatedKernel(K.matrix(), spectrum);

    const Eigen::MatrixXd& U = spectrum.eigenvectors;
    // The retained pairs must be eigenpairs of this K.
    const Eigen::MatrixXd residual = K.matrix() * U - U * spectrum.eigenvalues.asDiagonal();
    if (residual.cwiseAbs().maxCoeff() > 1e-6 * std::max(1.0, spectrum.leading_eigenvalue))
        fail(ErrorCode::SourceMismatch, "spectrum was not computed from this kernel matrix");
    Eigen::MatrixXd kp = K.matrix();
    kp.noalias() -= U * spectrum.eigenvalues.asDiagonal() * U.transpose();
    kp = 0.5 * (kp + kp.transpose()).eval();
    return DeflatedKernel(std::move(kp), spectrum);
}

Eigen::MatrixXd explicit_feature_map(const Eigen::MatrixXd& points, const KernelSpec& spec) {
    if (points.rows() < 1 || points.cols() < 1)
        fail(ErrorCode::InvalidArgument, "feature map needs at least one point");
    switch (spec.kind) {
        case KernelKind::Linear: return points;
        case KernelKind::Polynomial: break;
        default:
            fail(ErrorCode::NotExplicitFeatureMap,
                 spec.describe() + " has no finite explicit feature map");
    }
    spec.validate();

    // (x.y + c)^p = (z.z')^p with z = (x, sqrt(c)); expand with the multinomial theorem.
    const Eigen::Index d = points.cols();
    Eigen::MatrixXd z(points.rows(), d + 1);
    z.leftCols(d) = points;
    z.col(d).setConstant(std::sqrt(spec.offset));

    const int parts = static_cast<int>(d + 1);
    std::vector<std::vector<int>> exponents;
    std::vector<int> current(static_cast<std::size_t>(parts));
    for_each_multi_index(parts, spec.degree, current, 0,
                         [&](const std::vector<int>& e) { exponents.push_back(e); });

    std::vector<double> log_factorial(static_cast<std::size_t>(spec.degree) + 1, 0.0);
    for (int i = 1; i <= spec.degree; ++i)
        log_factorial[static_cast<std::size_t>(i)] = log_factorial[static_cast<std::size_t>(i) - 1] + std::log(i);

    Eigen::MatrixXd phi(points.rows(), static_cast<Eigen::Index>(exponents.size()));
    for (std::size_t f = 0; f < exponents.size(); ++f) {
        double log_coeff = log_factorial[static_cast<std::size_t>(spec.degree)];
        for (int e : exponents[f]) log_coeff -= log_factorial[static_cast<std::size_t>(e)];
        const double weight = std::sqrt(std::exp(log_coeff));
        for (Eigen::Index i = 0; i < points.rows(); ++i) {
            double monomial = 1.0;
            for (int j = 0; j < parts; ++j)
                monomial *= std::pow(z(i, j), exponents[f][static_cast<std::size_t>(j)]);
            phi(i, static_cast<Eigen::Index>(f)) = weight * monomial;
        }
    }
    return phi;
}

Eigen::VectorXd covariance_spectrum(const Eigen::MatrixXd& points, const KernelSpec& spec) {
    const Eigen::MatrixXd phi = explicit_feature_map(points, spec);
    const Eigen::MatrixXd covariance = phi.transpose() * phi;
    const Eigen::VectorXd values = eig_sym(covariance).values;
    const double cutoff = 1e-10 * std::max(values[0], 0.0);
    Eigen::Index count = 0;
    while (count < values.size() && values[count] > cutoff) ++count;
    return values.head(count);
}

Eigen::VectorXd covariance_spectrum(const DataMatrix& data, const KernelSpec& spec) {
    return covariance_spectrum(data.values(), spec);
}

}  // namespace skpca
