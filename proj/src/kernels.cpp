#include "skpca/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "skpca/error.hpp"

namespace skpca {

namespace {

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

double squared_distance(const PointRef& x, const PointRef& y) {
    double s = 0.0;
    for (Eigen::Index c = 0; c < x.size(); ++c) {
        const double diff = x[c] - y[c];
        s += diff * diff;
    }
    return s;
}

double gaussian_scale(const KernelSpec& spec) {
    const double sigma = *spec.bandwidth;
    return spec.convention == BandwidthConvention::TwoSigmaSquared ? 2.0 * sigma * sigma
                                                                   : sigma * sigma;
}

}  // namespace

DataMatrix::DataMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
    if (values_.rows() < 2)
        fail(ErrorCode::NotEnoughPoints,
             "need at least 2 points, got " + std::to_string(values_.rows()));
    if (values_.cols() < 1) fail(ErrorCode::InvalidArgument, "need at least 1 feature");
    if (!all_finite(values_)) fail(ErrorCode::NonFiniteEntry, "data matrix has NaN or Inf entries");
}

KernelSpec KernelSpec::gaussian(double sigma) {
    KernelSpec s;
    s.bandwidth = sigma;
    s.validate();
    return s;
}

KernelSpec KernelSpec::gaussian_median() { return KernelSpec{}; }

KernelSpec KernelSpec::linear() {
    KernelSpec s;
    s.kind = KernelKind::Linear;
    return s;
}

KernelSpec KernelSpec::polynomial(int degree, double offset) {
    KernelSpec s;
    s.kind = KernelKind::Polynomial;
    s.degree = degree;
    s.offset = offset;
    s.validate();
    return s;
}

KernelSpec KernelSpec::precomputed() {
    KernelSpec s;
    s.kind = KernelKind::Precomputed;
    return s;
}

void KernelSpec::validate() const {
    if (kind == KernelKind::Gaussian && bandwidth && !(*bandwidth > 0.0 && std::isfinite(*bandwidth)))
        fail(ErrorCode::InvalidArgument, "Gaussian bandwidth must be positive and finite");
    if (kind == KernelKind::Polynomial) {
        if (degree < 1) fail(ErrorCode::InvalidArgument, "polynomial degree must be >= 1");
        if (!(offset >= 0.0)) fail(ErrorCode::InvalidArgument, "polynomial offset must be >= 0");
    }
}

std::string KernelSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case KernelKind::Gaussian:
            os << "gaussian(";
            if (bandwidth)
                os << "sigma=" << *bandwidth;
            else
                os << "median";
            os << (convention == BandwidthConvention::TwoSigmaSquared ? ", 2s^2)" : ", s^2)");
            break;
        case KernelKind::Linear: os << "linear"; break;
        case KernelKind::Polynomial: os << "polynomial(" << degree << ", " << offset << ")"; break;
        case KernelKind::Precomputed: os << "precomputed"; break;
    }
    return os.str();
}

KernelMatrix::KernelMatrix(Eigen::MatrixXd K, KernelSpec spec) : K_(std::move(K)), spec_(spec) {
    if (K_.rows() != K_.cols())
        fail(ErrorCode::DimensionMismatch, "kernel matrix must be square");
    if (K_.rows() < 1) fail(ErrorCode::InvalidArgument, "kernel matrix is empty");
    if (!all_finite(K_)) fail(ErrorCode::NonFiniteEntry, "kernel matrix has NaN or Inf entries");
    const double scale = std::max(1.0, K_.cwiseAbs().maxCoeff());
    if ((K_ - K_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        fail(ErrorCode::InvalidArgument, "kernel matrix is not symmetric");
    K_ = 0.5 * (K_ + K_.transpose()).eval();
}

KernelMatrix KernelMatrix::from_matrix(Eigen::MatrixXd K) {
    return KernelMatrix(std::move(K), KernelSpec::precomputed());
}

double median_bandwidth(const DataMatrix& data) {
    const Eigen::Index n = data.rows();
    std::vector<double> dist;
    dist.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            dist.push_back(std::sqrt(squared_distance(data.row(i), data.row(j))));

    const std::size_t m = dist.size();
    const std::size_t mid = m / 2;
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid), dist.end());
    double median = dist[mid];
    if (m % 2 == 0) {
        const double lower = *std::max_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid));
        median = 0.5 * (lower + median);
    }
    if (median == 0.0)
        fail(ErrorCode::AllPointsIdentical, "median pairwise distance is 0");
    return median;
}

KernelSpec resolve_bandwidth(const KernelSpec& spec, const DataMatrix& data) {
    KernelSpec out = spec;
    if (out.needs_bandwidth()) out.bandwidth = median_bandwidth(data);
    out.validate();
    return out;
}

double kernel_value(const KernelSpec& spec, const PointRef& x, const PointRef& y) {
    switch (spec.kind) {
        case KernelKind::Gaussian:
            if (!spec.bandwidth) fail(ErrorCode::InvalidArgument, "Gaussian bandwidth not resolved");
            return std::exp(-squared_distance(x, y) / gaussian_scale(spec));
        case KernelKind::Linear: return x.dot(y);
        case KernelKind::Polynomial: return std::pow(x.dot(y) + spec.offset, spec.degree);
        case KernelKind::Precomputed: break;
    }
    fail(ErrorCode::InvalidArgument, "cannot evaluate a precomputed kernel on points");
}

KernelMatrix gram(const DataMatrix& data, const KernelSpec& spec) {
    if (spec.kind == KernelKind::Precomputed)
        fail(ErrorCode::InvalidArgument, "cannot build a Gram matrix from a precomputed spec");
    const KernelSpec resolved = resolve_bandwidth(spec, data);
    const Eigen::Index n = data.rows();
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = kernel_value(resolved, data.row(i), data.row(j));
            K(i, j) = v;
            K(j, i) = v;
        }
    }
    if (!K.allFinite()) fail(ErrorCode::NonFiniteEntry, "kernel evaluation produced NaN or Inf");
    return KernelMatrix(std::move(K), resolved);
}

Eigen::MatrixXd gram_cross(const DataMatrix& train, const Eigen::MatrixXd& test,
                           const KernelSpec& spec) {
    if (test.cols() != train.cols())
        fail(ErrorCode::DimensionMismatch, "train has " + std::to_string(train.cols()) +
                                               " features, test has " + std::to_string(test.cols()));
    if (spec.needs_bandwidth())
        fail(ErrorCode::InvalidArgument, "gram_cross needs an explicit bandwidth");
    if (!test.allFinite()) fail(ErrorCode::NonFiniteEntry, "test points have NaN or Inf entries");
    Eigen::MatrixXd out(test.rows(), train.rows());
    for (Eigen::Index i = 0; i < test.rows(); ++i)
        for (Eigen::Index j = 0; j < train.rows(); ++j)
            out(i, j) = kernel_value(spec, test.row(i), train.row(j));
    if (!out.allFinite()) fail(ErrorCode::NonFiniteEntry, "kernel evaluation produced NaN or Inf");
    return out;
}

}  // namespace skpca
