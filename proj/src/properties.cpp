#include "skpca/properties.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "skpca/baselines.hpp"
#include "skpca/error.hpp"
#include "skpca/kpca.hpp"
#include "skpca/semikpca.hpp"
#include "skpca/spectral.hpp"

namespace skpca {

namespace random_instance {

Eigen::MatrixXd points(std::uint64_t seed, Eigen::Index n, Eigen::Index d) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd X(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j) X(i, j) = normal(rng);
    return X;
}

KernelMatrix gaussian_gram(std::uint64_t seed, Eigen::Index n, Eigen::Index d) {
    return gram(DataMatrix(points(seed, n, d)), KernelSpec::gaussian_median());
}

std::vector<int> labels(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(-1, 1);
    std::vector<int> y(n);
    for (int& v : y) v = pick(rng);
    return y;
}

}  // namespace random_instance

namespace {

// Sizes and deflation order for one seed.
struct Shape {
    Eigen::Index n;
    Eigen::Index d;
    std::size_t k;
};

Shape shape_for(std::uint64_t seed, Eigen::Index max_n) {
    std::mt19937_64 rng(seed ^ 0x5eedf00dULL);
    const auto n = std::uniform_int_distribution<Eigen::Index>(6, max_n)(rng);
    const auto d = std::uniform_int_distribution<Eigen::Index>(1, 5)(rng);
    const auto k = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    return {n, d, k};
}

std::string describe(const char* what, double value, double limit) {
    std::ostringstream os;
    os << what << " = " << std::setprecision(3) << value << " > " << limit;
    return os.str();
}

std::string check_reconstruction(std::uint64_t seed, double& worst) {
    const KernelMatrix K = random_instance::gaussian_gram(seed, shape_for(seed, 30).n, 3);
    const Eigendecomposition e = eig_sym(K);
    const Eigen::MatrixXd back = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    const double err = (back - K.matrix()).cwiseAbs().maxCoeff();
    const double limit = 1e-10 * std::max(1.0, e.values[0]);
    worst = std::max(worst, err);
    return err <= limit ? "" : describe("reconstruction error", err, limit);
}

std::string check_determinism(std::uint64_t seed, double&) {
    const KernelMatrix K = random_instance::gaussian_gram(seed, shape_for(seed, 30).n, 2);
    const Eigendecomposition a = eig_sym(K);
    const Eigendecomposition b = eig_sym(K);
    const bool same = a.values.size() == b.values.size() &&
                      std::equal(a.values.data(), a.values.data() + a.values.size(), b.values.data()) &&
                      std::equal(a.vectors.data(), a.vectors.data() + a.vectors.size(), b.vectors.data());
    return same ? "" : "two decompositions of the same matrix differ";
}

std::string check_deflation(std::uint64_t seed, double& worst) {
    const Shape s = shape_for(seed, 30);
    const KernelMatrix K = random_instance::gaussian_gram(seed, s.n, s.d);
    const SpectrumTopK spectrum = top_k(K, s.k);
    const DeflatedKernel kp = deflate(K, spectrum);
    const double top = eig_sym(kp.matrix()).values[0];
    const double err = std::abs(top - spectrum.next_eigenvalue);
    worst = std::max(worst, err);
    if (err > 1e-8) return describe("|lambda_max(Kp) - lambda_k+1|", err, 1e-8);
    for (std::size_t l = 0; l < s.k; ++l) {
        const auto u = spectrum.eigenvectors.col(static_cast<Eigen::Index>(l));
        const double energy = u.dot(kp.matrix() * u);
        if (energy > 1e-8) return describe("u^T Kp u on a deflated direction", energy, 1e-8);
    }
    return "";
}

std::string compare_spectra(const Eigen::VectorXd& gram_values, const Eigen::VectorXd& cov, double& worst) {
    std::vector<double> nonzero;
    for (Eigen::Index i = 0; i < gram_values.size(); ++i)
        if (gram_values[i] > 1e-10 * gram_values[0]) nonzero.push_back(gram_values[i]);
    if (static_cast<Eigen::Index>(nonzero.size()) != cov.size())
        return "kernel matrix has " + std::to_string(nonzero.size()) + " non-zero eigenvalues, covariance " +
               std::to_string(cov.size());
    for (std::size_t i = 0; i < nonzero.size(); ++i) {
        const double rel = std::abs(nonzero[i] - cov[static_cast<Eigen::Index>(i)]) / nonzero[i];
        worst = std::max(worst, rel);
        if (rel > 1e-8) return describe("relative eigenvalue mismatch", rel, 1e-8);
    }
    return "";
}

std::string check_feature_space_spectrum(std::uint64_t seed, double& worst) {
    std::mt19937_64 rng(seed);
    const auto n = std::uniform_int_distribution<Eigen::Index>(2, 30)(rng);
    const auto d = std::uniform_int_distribution<Eigen::Index>(1, 6)(rng);
    const DataMatrix data(random_instance::points(seed, n, d));
    for (const KernelSpec& spec : {KernelSpec::linear(), KernelSpec::polynomial(2, 1.0)}) {
        const Eigen::VectorXd gram_values = eig_sym(gram(data, spec)).values;
        const std::string msg = compare_spectra(gram_values, covariance_spectrum(data, spec), worst);
        if (!msg.empty()) return spec.describe() + ": " + msg;
    }
    return "";
}

constexpr double kBoundaryFactors[] = {0.5, 1.0 - 1e-8, 1.0, 1.5};

std::string check_regime(std::uint64_t seed, double&) {
    const Shape s = shape_for(seed, 50);
    const KernelMatrix K = random_instance::gaussian_gram(seed, s.n, s.d);
    const DeflatedKernel kp = deflate(K, top_k(K, s.k));
    for (double c : kBoundaryFactors) {
        const KpcaRegime r = classify_regime(kp, c / kp.spectrum().next_eigenvalue);
        const bool convex = r.regime != Regime::Unbounded;
        if (convex != (r.certificate >= -kRegimeTolerance)) {
            std::ostringstream os;
            os << "c=" << c << ": regime " << to_string(r.regime) << " but certificate " << r.certificate;
            return os.str();
        }
    }
    return "";
}

std::string check_guard(std::uint64_t seed, double&) {
    const Shape s = shape_for(seed, 50);
    const KernelMatrix K = random_instance::gaussian_gram(seed, s.n, s.d);
    const DeflatedKernel kp = deflate(K, top_k(K, s.k));
    const LabelVector y(random_instance::labels(seed, static_cast<std::size_t>(s.n)));
    const double next = kp.spectrum().next_eigenvalue;
    for (double c : kBoundaryFactors) {
        const double gamma = c / next;
        const bool should_refuse = gamma >= (1.0 - 1e-12) / next;
        bool refused = false;
        std::string other;
        try {
            (void)fit(kp, y, gamma);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::UnboundedProblem)
                refused = true;
            else
                other = e.what();
        }
        if (!other.empty() || refused != should_refuse) {
            std::ostringstream os;
            os << "c=" << c << ": fit " << (refused ? "refused" : "accepted") << " gamma, expected "
               << (should_refuse ? "UnboundedProblem" : "a solution");
            if (!other.empty()) os << " (" << other << ")";
            return os.str();
        }
    }
    return "";
}

// f = sum_{l > k} lambda_l / (1/gamma - lambda_l) (u_l^T y) u_l
Eigen::VectorXd spectral_decision(const Eigendecomposition& e, std::size_t k, double gamma,
                                  const Eigen::VectorXd& y) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(y.size());
    for (Eigen::Index l = static_cast<Eigen::Index>(k); l < e.values.size(); ++l) {
        const double lambda = std::max(0.0, e.values[l]);
        f += lambda / (1.0 / gamma - lambda) * e.vectors.col(l).dot(y) * e.vectors.col(l);
    }
    return f;
}

std::string check_dual_spectral(std::uint64_t seed, double& worst) {
    const Shape s = shape_for(seed, 40);
    const KernelMatrix K = random_instance::gaussian_gram(seed, s.n, s.d);
    const Eigendecomposition e = eig_sym(K);
    const DeflatedKernel kp = deflate(K, top_k(e, s.k));
    const LabelVector y(random_instance::labels(seed, static_cast<std::size_t>(s.n)));
    const double gamma = 0.5 / kp.spectrum().next_eigenvalue;
    const SemiKpcaModel m = fit(kp, y, gamma);
    const double err = (m.decision_values - spectral_decision(e, s.k, gamma, y.as_vector())).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    return err <= 1e-8 ? "" : describe("max |f - spectral formula|", err, 1e-8);
}

std::string check_kkt(std::uint64_t seed, double& worst) {
    const Shape s = shape_for(seed, 40);
    const KernelMatrix K = random_instance::gaussian_gram(seed, s.n, s.d);
    const DeflatedKernel kp = deflate(K, top_k(K, s.k));
    const LabelVector y(random_instance::labels(seed, static_cast<std::size_t>(s.n)));
    const double gamma = 0.9 / kp.spectrum().next_eigenvalue;
    const SemiKpcaModel m = fit(kp, y, gamma);
    // e = alpha / gamma must equal y + f.
    const double err = (m.alpha / gamma - (y.as_vector() + m.decision_values)).norm();
    const double limit = 1e-8 * std::max(1.0, y.as_vector().norm());
    worst = std::max(worst, err);
    return err <= limit ? "" : describe("||alpha/gamma - y - f||", err, limit);
}

std::string check_reduction(std::uint64_t seed, double&) {
    const Shape s = shape_for(seed, 40);
    const KernelMatrix K = random_instance::gaussian_gram(seed, s.n, s.d);
    const DeflatedKernel kp = deflate(K, top_k(K, s.k));
    const SemiKpcaModel m = fit(kp, LabelVector::zeros(static_cast<std::size_t>(s.n)), 0.5 / kp.spectrum().next_eigenvalue);
    if (!(m.alpha.array() == 0.0).all()) return "y = 0 gave a non-zero alpha";
    const std::vector<int> p = predict(m);
    if (!std::all_of(p.begin(), p.end(), [](int v) { return v == 1; })) return "y = 0 did not predict all +1";
    return "";
}

std::string check_monotone_limit(std::uint64_t seed, double&) {
    const Shape s = shape_for(seed, 30);
    const KernelMatrix K = random_instance::gaussian_gram(seed, s.n, s.d);
    const DeflatedKernel kp = deflate(K, top_k(K, s.k));
    const LabelVector y(random_instance::labels(seed, static_cast<std::size_t>(s.n)));
    const double top = 1.0 / kp.spectrum().next_eigenvalue;
    double previous = 0.0;
    for (double c : {1e-9, 1e-6, 1e-3, 0.1, 0.5, 0.9}) {
        const double norm = fit(kp, y, c * top).decision_values.norm();
        if (norm < previous * (1.0 - 1e-9)) return "||f|| decreased as gamma grew";
        previous = norm;
        if (c == 1e-9 && norm > 1e-6 * std::max(1.0, y.as_vector().norm()))
            return describe("||f|| at gamma -> 0", norm, 1e-6);
    }
    return "";
}

std::string check_principal_scores(std::uint64_t seed, double& worst) {
    const KernelMatrix K = random_instance::gaussian_gram(seed, shape_for(seed, 30).n, 3);
    const Eigendecomposition e = eig_sym(K);
    for (std::size_t k = 0; k < 5 && static_cast<Eigen::Index>(k) < K.size(); ++k) {
        if (e.values[static_cast<Eigen::Index>(k)] <= 1e-10 * e.values[0]) break;
        const ComponentScores c = principal_scores(K, k);
        const double cosine = std::abs(c.scores.dot(e.vectors.col(static_cast<Eigen::Index>(k))));
        worst = std::max(worst, 1.0 - cosine);
        if (cosine < 1.0 - 1e-8)
            return "component " + std::to_string(k + 1) + ": " + describe("1 - cosine", 1.0 - cosine, 1e-8);
        const double residual = (K.matrix() * c.scores - c.eigenvalue * c.scores).norm();
        if (residual > 1e-8 * std::max(1.0, e.values[0])) return describe("||K s - lambda s||", residual, 1e-8);
    }
    return "";
}

std::string check_trivial_objective(std::uint64_t seed, double&) {
    const Shape s = shape_for(seed, 30);
    const KernelMatrix K = random_instance::gaussian_gram(seed, s.n, s.d);
    const DeflatedKernel kp = deflate(K, top_k(K, s.k));
    const double gamma = 0.5 / kp.spectrum().next_eigenvalue;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXd alpha(s.n);
        for (Eigen::Index i = 0; i < s.n; ++i) alpha[i] = normal(rng);
        const double value = kpca_objective(kp, alpha, gamma);
        if (value < -1e-10) return describe("negative objective in the trivial regime", -value, 1e-10);
    }
    return "";
}

std::string check_unbounded_direction(std::uint64_t seed, double&) {
    const Shape s = shape_for(seed, 30);
    const KernelMatrix K = random_instance::gaussian_gram(seed, s.n, s.d);
    const Eigendecomposition e = eig_sym(K);
    const DeflatedKernel kp = deflate(K, top_k(e, s.k));
    const double gamma = 1.5 / kp.spectrum().next_eigenvalue;
    const Eigen::VectorXd u = e.vectors.col(static_cast<Eigen::Index>(s.k));
    double previous = 0.0;
    for (double t = 1.0; t <= 1e8; t *= 10.0) {
        const double value = kpca_objective(kp, t * u, gamma);
        if (!(value < previous)) return "objective did not decrease along u_k+1";
        previous = value;
    }
    return previous < -1e6 ? "" : "objective along u_k+1 stayed above -1e6";
}

std::string check_baseline_coincidence(std::uint64_t seed, double& worst) {
    const Shape s = shape_for(seed, 30);
    const KernelMatrix K = random_instance::gaussian_gram(seed, s.n, s.d);
    std::vector<int> y = random_instance::labels(seed, static_cast<std::size_t>(s.n));
    for (int& v : y)
        if (v == 0) v = 1;
    const LabelVector labels(y);
    const double gamma = fixed_gamma_rule(LssvmMode::SemiZeroTarget, static_cast<std::size_t>(s.d),
                                          static_cast<std::size_t>(s.n));
    const LssvmModel semi = fit_semi_lssvm(K, labels, gamma);
    const LssvmModel subs = fit_subs_lssvm(K, labels, gamma);
    const double err = (semi.decision_values - subs.decision_values).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    return err <= 1e-8 ? "" : describe("max |f_semi - f_subs|", err, 1e-8);
}

std::string check_permutation(std::uint64_t seed, double& worst) {
    const Shape s = shape_for(seed, 30);
    const Eigen::MatrixXd X = random_instance::points(seed, s.n, s.d);
    const std::vector<int> y = random_instance::labels(seed, static_cast<std::size_t>(s.n));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(s.n));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    Eigen::MatrixXd Xp(s.n, s.d);
    std::vector<int> yp(y.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        Xp.row(static_cast<Eigen::Index>(i)) = X.row(order[i]);
        yp[i] = y[static_cast<std::size_t>(order[i])];
    }
    const KernelMatrix K = gram(DataMatrix(X), KernelSpec::gaussian_median());
    const KernelMatrix Kp = gram(DataMatrix(Xp), KernelSpec::gaussian_median());
    const DeflatedKernel a = deflate(K, top_k(K, s.k));
    const DeflatedKernel b = deflate(Kp, top_k(Kp, s.k));
    const double gamma = 0.5 / a.spectrum().next_eigenvalue;
    const SemiKpcaModel ma = fit(a, LabelVector(y), gamma);
    const SemiKpcaModel mb = fit(b, LabelVector(yp), gamma);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const double err = std::abs(mb.alpha[static_cast<Eigen::Index>(i)] - ma.alpha[order[i]]);
        worst = std::max(worst, err);
        if (err > 1e-8 * std::max(1.0, ma.alpha.cwiseAbs().maxCoeff()))
            return describe("|alpha_perm - perm(alpha)|", err, 1e-8);
    }
    return "";
}

}  // namespace

std::vector<Property> default_properties() {
    return {
        {"spectral-reconstruction", check_reconstruction},
        {"eigen-determinism", check_determinism},
        {"deflation-exactness", check_deflation},
        {"feature-space-spectrum-match", check_feature_space_spectrum},
        {"regime-certificate", check_regime},
        {"convexity-guard", check_guard},
        {"dual-spectral-equivalence", check_dual_spectral},
        {"kkt-consistency", check_kkt},
        {"zero-label-reduction", check_reduction},
        {"small-gamma-limit", check_monotone_limit},
        {"principal-scores", check_principal_scores},
        {"trivial-regime-objective", check_trivial_objective},
        {"unbounded-direction", check_unbounded_direction},
        {"baseline-coincidence", check_baseline_coincidence},
        {"permutation-equivariance", check_permutation},
    };
}

PropertyResult run_property(const Property& property, const CheckOptions& options) {
    PropertyResult result;
    result.name = property.name;
    for (std::size_t i = 0; i < options.seeds; ++i) {
        const std::uint64_t seed = options.base_seed + i;
        std::string msg;
        try {
            msg = property.check(seed, result.worst);
        } catch (const std::exception& e) {
            msg = std::string("threw ") + e.what();
        }
        ++result.trials;
        if (!msg.empty()) {
            if (result.failing_seeds.empty()) result.first_failure = msg;
            result.failing_seeds.push_back(seed);
        }
    }
    return result;
}

std::vector<PropertyResult> run_properties(const CheckOptions& options) {
    std::vector<PropertyResult> out;
    for (const Property& p : default_properties()) out.push_back(run_property(p, options));
    return out;
}

std::string format_check_table(const std::vector<PropertyResult>& results) {
    std::ostringstream os;
    for (const PropertyResult& r : results) {
        os << std::left << std::setw(30) << r.name << (r.passed() ? "PASS" : "FAIL") << "  "
           << r.trials - r.failing_seeds.size() << "/" << r.trials;
        if (r.worst > 0.0) os << "  worst " << std::scientific << std::setprecision(2) << r.worst << std::defaultfloat;
        os << "\n";
        if (!r.passed()) {
            os << "    failing seeds:";
            for (std::size_t i = 0; i < r.failing_seeds.size() && i < 10; ++i) os << ' ' << r.failing_seeds[i];
            if (r.failing_seeds.size() > 10) os << " ...";
            os << "\n    first: " << r.first_failure << "\n";
        }
    }
    return os.str();
}

}  // namespace skpca
