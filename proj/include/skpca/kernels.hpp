#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

namespace skpca {

/// N x d matrix of points, one point per row. Validated on construction:
/// N >= 2, d >= 1, every entry finite.
class DataMatrix {
public:
    explicit DataMatrix(Eigen::MatrixXd values);

    Eigen::Index rows() const { return values_.rows(); }
    Eigen::Index cols() const { return values_.cols(); }
    const Eigen::MatrixXd& values() const { return values_; }
    auto row(Eigen::Index i) const { return values_.row(i); }

private:
    Eigen::MatrixXd values_;
};

enum class KernelKind { Gaussian, Linear, Polynomial, Precomputed };

/// Which denominator the Gaussian kernel uses: exp(-r^2 / (2 s^2)) or exp(-r^2 / s^2).
enum class BandwidthConvention { TwoSigmaSquared, SigmaSquared };

struct KernelSpec {
    KernelKind kind = KernelKind::Gaussian;
    /// Empty means "use the median pairwise distance of the data".
    std::optional<double> bandwidth;
    BandwidthConvention convention = BandwidthConvention::TwoSigmaSquared;
    int degree = 2;       // polynomial only
    double offset = 1.0;  // polynomial only: (x.y + offset)^degree

    static KernelSpec gaussian(double sigma);
    static KernelSpec gaussian_median();
    static KernelSpec linear();
    static KernelSpec polynomial(int degree, double offset);
    static KernelSpec precomputed();

    bool needs_bandwidth() const { return kind == KernelKind::Gaussian && !bandwidth; }
    void validate() const;
    std::string describe() const;
};

/// Symmetric N x N Gram matrix together with the kernel that produced it.
class KernelMatrix {
public:
    /// Takes ownership of `K`; it must be square, finite and symmetric to
    /// within rounding. The stored matrix is (K + K^T) / 2.
    KernelMatrix(Eigen::MatrixXd K, KernelSpec spec);

    /// Wraps an arbitrary symmetric matrix, e.g. diag(4, 1) in tests.
    static KernelMatrix from_matrix(Eigen::MatrixXd K);

    const Eigen::MatrixXd& matrix() const { return K_; }
    const KernelSpec& spec() const { return spec_; }
    Eigen::Index size() const { return K_.rows(); }

private:
    Eigen::MatrixXd K_;
    KernelSpec spec_;
};

/// Median of the N(N-1)/2 pairwise Euclidean distances (mean of the two
/// middle values for an even count). Throws AllPointsIdentical if it is 0.
double median_bandwidth(const DataMatrix& data);

/// Returns `spec` with the median heuristic applied when no bandwidth is set.
KernelSpec resolve_bandwidth(const KernelSpec& spec, const DataMatrix& data);

/// A row of a column-major matrix, viewed without copying.
using PointRef = Eigen::Ref<const Eigen::RowVectorXd, 0, Eigen::InnerStride<>>;

double kernel_value(const KernelSpec& spec, const PointRef& x, const PointRef& y);

KernelMatrix gram(const DataMatrix& data, const KernelSpec& spec);

/// Rectangular kernel: entry (i, j) = k(test_i, train_j). The spec must carry
/// an explicit bandwidth so train and test share one kernel. `test` may hold a
/// single point.
Eigen::MatrixXd gram_cross(const DataMatrix& train, const Eigen::MatrixXd& test,
                           const KernelSpec& spec);

}  // namespace skpca
