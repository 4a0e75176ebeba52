#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "skpca/datasets.hpp"

namespace skpca {

enum class ModelKind { SemiKpca, SemiLssvm, SubsLssvm };

struct ModelSpec {
    ModelKind kind = ModelKind::SemiKpca;
    std::size_t k = 0;  // deflation order, Semi-KPCA only

    /// "skpca-k<k>", "semi-lssvm" or "subs-lssvm".
    std::string name() const;
    /// Inverse of name(). Throws ConfigError.
    static ModelSpec parse(const std::string& name);

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

enum class PolicyKind { Best, Fixed };

const char* to_string(PolicyKind policy) noexcept;
PolicyKind parse_policy(const std::string& name);

struct ExperimentConfig {
    std::vector<std::string> datasets;
    std::vector<double> fractions{0.01, 0.02, 0.05, 0.10};
    std::size_t repetitions = 10;
    std::vector<ModelSpec> models{{ModelKind::SemiKpca, 0},
                                  {ModelKind::SemiKpca, 1},
                                  {ModelKind::SemiLssvm, 0},
                                  {ModelKind::SubsLssvm, 0}};
    std::vector<PolicyKind> policies{PolicyKind::Best, PolicyKind::Fixed};
    std::uint64_t base_seed = 0;
    std::filesystem::path data_dir;
    bool standardize = true;
    std::size_t grid_size = 40;
    std::size_t threads = 0;  // 0 = hardware concurrency
    std::uint64_t synth_seed = 0;

    void validate() const;
};

/// Seed recorded for repetition r (base_seed + r).
std::uint64_t repetition_seed(std::uint64_t base_seed, std::size_t repetition);
/// RNG seed of the label mask for one (repetition seed, fraction); masks are
/// drawn afresh for every fraction.
std::uint64_t mask_seed(std::uint64_t repetition_seed, double fraction);

/// One model evaluated on one mask.
struct RunRecord {
    std::string dataset;
    double fraction = 0.0;
    std::size_t label_count = 0;
    std::string model;
    PolicyKind policy = PolicyKind::Best;
    std::size_t repetition = 0;
    std::uint64_t seed = 0;
    double gamma = 0.0;
    double accuracy = 0.0;  // percent, over unlabeled points only
};

struct ReportRow {
    std::string dataset;
    double fraction = 0.0;
    std::size_t label_count = 0;
    std::string model;
    PolicyKind policy = PolicyKind::Best;
    double mean = 0.0;  // percent
    double std = 0.0;   // sample standard deviation, percent
    std::size_t rank = 0;
    std::size_t runs = 0;
    std::vector<double> gammas;  // chosen gamma per repetition
    std::vector<std::uint64_t> seeds;
    std::string error;  // non-empty when the cell failed
};

struct ExperimentReport {
    std::vector<RunRecord> runs;
    std::vector<ReportRow> rows;
    std::vector<std::string> errors;

    bool has_errors() const { return !errors.empty(); }
};

/// Preprocessed data set as the experiments see it (standardised if requested).
Dataset prepare_dataset(const std::string& name, const ExperimentConfig& cfg);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Assigns ranks within each (dataset, label count, policy) block: higher mean
/// first, then lower std, then model name. Failed cells are ranked last.
void rank_rows(std::vector<ReportRow>& rows);

/// Human-readable comparison table, one decimal, rank digits in brackets.
std::string rank_and_format(const ExperimentReport& report);

struct SweepPoint {
    double gamma = 0.0;
    double mean = 0.0;  // percent
    double std = 0.0;
};

struct SweepCurve {
    std::string dataset;
    double fraction = 0.0;
    std::size_t label_count = 0;
    std::string model;
    std::vector<SweepPoint> points;  // ascending gamma
    double best_gamma = 0.0;
    double heuristic_gamma = 0.0;
    double inv_lambda1 = 0.0;
    double inv_lambda2 = 0.0;
    double baseline_accuracy = 0.0;  // majority-class rate, percent
};

struct SweepConfig {
    std::string dataset;
    double fraction = 0.01;
    std::vector<ModelSpec> models = ExperimentConfig{}.models;
    std::size_t grid_size = 40;
    std::size_t repetitions = 10;
    std::uint64_t base_seed = 0;
    std::filesystem::path data_dir;
    bool standardize = true;
    std::size_t threads = 0;
    std::uint64_t synth_seed = 0;
};

/// Mean accuracy along each model's gamma grid, with shared masks. Semi-KPCA
/// grids stop inside their convexity limit.
std::vector<SweepCurve> gamma_sweep(const SweepConfig& cfg);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

void write_results(std::ostream& os, const ExperimentReport& report);
void write_summary(std::ostream& os, const ExperimentReport& report);
void write_curve(std::ostream& os, const SweepCurve& curve);
void write_markers(std::ostream& os, const std::vector<SweepCurve>& curves);

/// Writes results.csv, summary.csv, table.txt and (if any) errors.txt into `dir`.
void write_report_files(const std::filesystem::path& dir, const ExperimentReport& report);
/// Writes sweep_<dataset>_<model>.csv per curve plus sweep_<dataset>_markers.csv.
void write_sweep_files(const std::filesystem::path& dir, const std::vector<SweepCurve>& curves);

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = all cores).
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace skpca
