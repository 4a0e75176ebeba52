#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skpca/kernels.hpp"

namespace skpca {

// Randomised property suites run by `skpca check`. Each property is checked on
// one small random instance per seed; a failing seed reproduces its instance.

struct PropertyResult {
    std::string name;
    std::size_t trials = 0;
    std::vector<std::uint64_t> failing_seeds;
    std::string first_failure;  // description of the first counterexample
    double worst = 0.0;         // largest observed error, where meaningful

    bool passed() const { return failing_seeds.empty(); }
};

struct CheckOptions {
    std::size_t seeds = 20;
    std::uint64_t base_seed = 0;
};

/// A property returns an empty string on success, else a description of what broke.
/// `worst` may be raised to the largest error seen.
using PropertyFn = std::function<std::string(std::uint64_t seed, double& worst)>;

struct Property {
    std::string name;
    PropertyFn check;
};

std::vector<Property> default_properties();

PropertyResult run_property(const Property& property, const CheckOptions& options);
std::vector<PropertyResult> run_properties(const CheckOptions& options);

/// Pass/fail table, one line per property, failing seeds listed.
std::string format_check_table(const std::vector<PropertyResult>& results);

/// Random test instances shared by the property suites and the tests.
namespace random_instance {

/// N x d standard normal points.
Eigen::MatrixXd points(std::uint64_t seed, Eigen::Index n, Eigen::Index d);

/// Gaussian Gram matrix (median bandwidth) of n random points in d dimensions.
KernelMatrix gaussian_gram(std::uint64_t seed, Eigen::Index n, Eigen::Index d);

/// Entries drawn uniformly from {-1, 0, +1}.
std::vector<int> labels(std::uint64_t seed, std::size_t n);

}  // namespace random_instance

}  // namespace skpca
