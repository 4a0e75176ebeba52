#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skpca/kernels.hpp"
#include "skpca/semikpca.hpp"

namespace skpca {

struct Dataset {
    std::string name;
    DataMatrix X;
    std::vector<int> labels;  // ground truth in {-1, +1}
    /// Reveal counts pinned per label fraction; see reveal_count().
    std::vector<std::pair<double, std::size_t>> reveal_counts;

    std::size_t size() const { return labels.size(); }
    double majority_rate() const;
};

struct MaskedDataset {
    const Dataset* base = nullptr;
    std::vector<bool> mask;  // true = label revealed
    LabelVector revealed;
    std::uint64_t seed = 0;
};

struct LabelSchema {
    int label_column = -1;                  // negative counts from the end
    std::map<std::string, int> encoding;    // raw token -> -1 / +1
    std::optional<int> rest;                // label for tokens missing from `encoding`
    char delimiter = '\0';                  // '\0' detects ',' or ';'
    bool has_header = false;
};

/// Reads delimited text. Lines starting with '@' (KEEL headers) and blank
/// lines are skipped. Throws ParseError (with row and column), UnknownLabel,
/// NotBinary and NotEnoughPoints.
Dataset load_delimited(const std::filesystem::path& path, const LabelSchema& schema,
                       const std::string& name = {});

/// Four isotropic Gaussian clusters on a line, 100 points each, two per class.
/// Distances are measured between cluster centres, in units of sigma.
struct SynthLayout {
    double sigma = 1.0;
    double between_class = 4.0;  // 2 sigma gap between the sigma-radius discs
    double same_class = 4.5;     // 2.5 sigma gap
    std::size_t points_per_cluster = 100;
};

/// Centres in generation order: class +1, +1, -1, -1.
std::vector<Eigen::Vector2d> synth_centers(const SynthLayout& layout = {});

Dataset synth_four_gaussians(std::uint64_t seed, const SynthLayout& layout = {});

struct Standardized {
    Eigen::MatrixXd X;
    std::vector<std::size_t> dropped_columns;
    std::vector<std::string> warnings;
};

/// Zero mean and unit (population) variance per column; constant columns
/// are dropped with a warning.
Standardized standardize(const Eigen::MatrixXd& X);

/// Labels revealed for `fraction`: the pinned count if the dataset carries
/// one for that fraction, otherwise round-half-up of fraction * N.
std::size_t reveal_count(const Dataset& ds, double fraction);

/// Stratified draw of reveal_count(ds, fraction) labels, at least one per
/// class once two or more are revealed. Deterministic per seed.
MaskedDataset mask_labels(const Dataset& ds, double fraction, std::uint64_t seed);

struct FixtureEntry {
    std::string name;
    std::string file;  // "-" for generated data
    LabelSchema schema;
    std::size_t n = 0;
    std::size_t d = 0;
    double majority_percent = 0.0;
    std::vector<std::pair<double, std::size_t>> reveal_counts;
};

std::vector<FixtureEntry> load_manifest(const std::filesystem::path& manifest);

/// Loads a bundled fixture and checks it against its manifest row (N, d,
/// majority class). Throws UnknownDataset for names not in the manifest.
Dataset load_fixture(const std::string& name, const std::filesystem::path& data_dir,
                     std::uint64_t synth_seed = 0);

}  // namespace skpca
