#pragma once

// Reference computations for the tests, written independently of the library:
// no Eigen decompositions or solvers, only plain loops over Eigen storage.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

struct Spectrum {
    std::vector<double> values;               // descending
    std::vector<std::vector<double>> vectors;  // vectors[l] pairs with values[l], unit norm
};

// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
inline Spectrum jacobi(const Eigen::MatrixXd& input) {
    const int n = static_cast<int>(input.rows());
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        v[i][i] = 1.0;
        for (int j = 0; j < n; ++j) a[i][j] = 0.5 * (input(i, j) + input(j, i));
    }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        double total = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                total += a[i][j] * a[i][j];
                if (i != j) off += a[i][j] * a[i][j];
            }
        if (off <= 1e-30 * std::max(total, 1e-300)) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v[k][p];
                    const double vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] > a[y][y]; });
    Spectrum out;
    for (int idx : order) {
        out.values.push_back(a[idx][idx]);
        std::vector<double> col(n);
        for (int k = 0; k < n; ++k) col[k] = v[k][idx];
        out.vectors.push_back(col);
    }
    return out;
}

inline Eigen::VectorXd column(const Spectrum& e, std::size_t l) {
    return Eigen::Map<const Eigen::VectorXd>(e.vectors[l].data(), static_cast<Eigen::Index>(e.vectors[l].size()));
}

// Gaussian elimination with partial pivoting.
inline Eigen::VectorXd solve(Eigen::MatrixXd a, Eigen::VectorXd b) {
    const Eigen::Index n = a.rows();
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        for (Eigen::Index r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        a.row(col).swap(a.row(pivot));
        std::swap(b[col], b[pivot]);
        for (Eigen::Index r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            for (Eigen::Index c = col; c < n; ++c) a(r, c) -= f * a(col, c);
            b[r] -= f * b[col];
        }
    }
    Eigen::VectorXd x(n);
    for (Eigen::Index r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (Eigen::Index c = r + 1; c < n; ++c) s -= a(r, c) * x[c];
        x[r] = s / a(r, r);
    }
    return x;
}

inline double median_pairwise_distance(const Eigen::MatrixXd& X) {
    std::vector<double> d;
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        for (Eigen::Index j = i + 1; j < X.rows(); ++j) {
            double s = 0.0;
            for (Eigen::Index c = 0; c < X.cols(); ++c) s += (X(i, c) - X(j, c)) * (X(i, c) - X(j, c));
            d.push_back(std::sqrt(s));
        }
    std::sort(d.begin(), d.end());
    const std::size_t m = d.size();
    return m % 2 == 1 ? d[m / 2] : 0.5 * (d[m / 2 - 1] + d[m / 2]);
}

inline Eigen::MatrixXd gaussian_gram(const Eigen::MatrixXd& X, double sigma) {
    const Eigen::Index n = X.rows();
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            double s = 0.0;
            for (Eigen::Index c = 0; c < X.cols(); ++c) s += (X(i, c) - X(j, c)) * (X(i, c) - X(j, c));
            K(i, j) = std::exp(-s / (2.0 * sigma * sigma));
        }
    return K;
}

// Decision values from the spectral expansion of the Semi-KPCA solution:
// f = sum_{l > k} lambda_l / (1/gamma - lambda_l) (u_l . y) u_l.
inline Eigen::VectorXd spectral_decision(const Eigen::MatrixXd& K, std::size_t k, double gamma,
                                         const Eigen::VectorXd& y) {
    const Spectrum e = jacobi(K);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(y.size());
    for (std::size_t l = k; l < e.values.size(); ++l) {
        const double lambda = std::max(0.0, e.values[l]);
        const Eigen::VectorXd u = column(e, l);
        f += lambda / (1.0 / gamma - lambda) * u.dot(y) * u;
    }
    return f;
}

// Absolute cosine between two vectors.
inline double abs_cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace oracle
