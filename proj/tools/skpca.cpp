// skpca: experiments, gamma sweeps, property checks and synthetic data.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error (including
// failed report cells), 3 property failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skpca/config.hpp"
#include "skpca/datasets.hpp"
#include "skpca/error.hpp"
#include "skpca/harness.hpp"
#include "skpca/properties.hpp"

#ifndef SKPCA_DATA_DIR
#define SKPCA_DATA_DIR "data"
#endif

namespace {

enum Exit { kOk = 0, kConfigError = 1, kRuntimeError = 2, kPropertyFailure = 3 };

namespace fs = std::filesystem;
using namespace skpca;

void check_dataset_names(const std::vector<std::string>& names, const fs::path& data_dir) {
    const std::vector<FixtureEntry> entries = load_manifest(data_dir / "manifest.csv");
    for (const std::string& name : names) {
        const bool known = std::any_of(entries.begin(), entries.end(),
                                       [&](const FixtureEntry& e) { return e.name == name; });
        if (!known) {
            std::string list;
            for (const FixtureEntry& e : entries) list += (list.empty() ? "" : ", ") + e.name;
            fail(ErrorCode::ConfigError, "unknown dataset '" + name + "' (known: " + list + ")");
        }
    }
}

int cmd_run(const CliSettings& s) {
    check_dataset_names(s.experiment.datasets, s.experiment.data_dir);
    s.experiment.validate();
    if (s.verbose)
        std::cerr << "running " << s.experiment.datasets.size() << " dataset(s), "
                  << s.experiment.models.size() << " model(s), " << s.experiment.repetitions
                  << " repetition(s)\n";
    const ExperimentReport report = run_experiment(s.experiment);
    write_report_files(s.out, report);
    std::cout << rank_and_format(report);
    std::cout << "wrote " << (s.out / "results.csv").string() << " and " << (s.out / "summary.csv").string()
              << "\n";
    if (report.has_errors()) {
        for (const std::string& e : report.errors) std::cerr << "error: " << e << "\n";
        return kRuntimeError;
    }
    return kOk;
}

int cmd_sweep(const CliSettings& s) {
    if (s.sweep.dataset.empty()) fail(ErrorCode::ConfigError, "sweep needs --dataset");
    check_dataset_names({s.sweep.dataset}, s.sweep.data_dir);
    const std::vector<SweepCurve> curves = gamma_sweep(s.sweep);
    write_sweep_files(s.out, curves);
    for (const SweepCurve& c : curves)
        std::cout << c.model << ": best gamma " << format_double(c.best_gamma) << ", heuristic "
                  << format_double(c.heuristic_gamma) << ", " << c.points.size() << " point(s)\n";
    std::cout << "1/lambda_1 " << format_double(curves.front().inv_lambda1) << ", 1/lambda_2 "
              << format_double(curves.front().inv_lambda2) << ", majority "
              << format_double(curves.front().baseline_accuracy) << "%\n";
    return kOk;
}

int cmd_check(const CliSettings& s) {
    CheckOptions options;
    options.seeds = s.check_seeds;
    options.base_seed = s.experiment.base_seed;
    const std::vector<PropertyResult> results = run_properties(options);
    std::cout << format_check_table(results);
    const bool ok = std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed(); });
    std::cout << (ok ? "all properties hold\n" : "property failures\n");
    return ok ? kOk : kPropertyFailure;
}

int cmd_synth(const CliSettings& s) {
    const Dataset ds = synth_four_gaussians(s.experiment.base_seed);
    fs::create_directories(s.out);
    const fs::path path = s.out / "synth.csv";
    std::ofstream os(path);
    if (!os) fail(ErrorCode::IoError, "cannot write " + path.string());
    os << "x1,x2,label\n";
    for (Eigen::Index i = 0; i < ds.X.rows(); ++i)
        os << format_double(ds.X.values()(i, 0)) << ',' << format_double(ds.X.values()(i, 1)) << ','
           << ds.labels[static_cast<std::size_t>(i)] << '\n';
    if (!os) fail(ErrorCode::IoError, "write failed for " + path.string());
    std::cout << "wrote " << ds.size() << " points to " << path.string() << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semi-supervised kernel PCA experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    // String-valued so that only flags actually given override the config file.
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    auto add = [&](const std::string& key, const std::string& help) {
        options[key] = app.add_option("--" + key, values[key], help);
    };
    std::string config_path;
    app.add_option("--config", config_path, "key = value file; flags given on the command line win")
        ->check(CLI::ExistingFile);
    add("datasets", "comma-separated dataset names (default: all nine bundled)");
    add("fractions", "comma-separated label fractions in (0, 1] (default 0.01,0.02,0.05,0.1)");
    add("reps", "repetitions per label fraction (default 10)");
    add("models", "comma-separated: skpca-k<k>, semi-lssvm, subs-lssvm");
    add("gamma-policy", "best, fixed or both (default both)");
    add("k", "comma-separated deflation orders; replaces the skpca-k* models");
    add("seed", "base seed; repetition r uses seed + r (default 0)");
    add("threads", "worker threads, 0 = all cores (default 0)");
    add("out", "output directory (default results)");
    add("data-dir", "directory holding manifest.csv and the data files");
    add("dataset", "sweep: dataset name");
    add("fraction", "sweep: label fraction (default 0.01)");
    add("grid-size", "gamma grid points (default 40)");
    add("synth-seed", "seed of the generated synth dataset (default 0)");
    add("seeds", "check: random instances per property (default 20)");
    bool no_standardize = false;
    bool verbose = false;
    app.add_flag("--no-standardize", no_standardize, "use raw features instead of z-scores");
    app.add_flag("--verbose,-v", verbose, "progress on stderr");

    app.add_subcommand("run", "run the experiment grid and write results.csv, summary.csv, table.txt");
    app.add_subcommand("sweep", "accuracy along the gamma grid for one dataset");
    app.add_subcommand("check", "randomised property suites; exit 3 on failure");
    app.add_subcommand("synth", "write the four-Gaussian dataset to <out>/synth.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    CliSettings settings;
    try {
        ConfigMap config = config_path.empty() ? ConfigMap{} : load_config(config_path);
        ConfigMap flags;
        for (const auto& [key, opt] : options)
            if (opt->count() > 0) flags[key] = ConfigEntry{values[key], "--" + key};
        if (no_standardize) flags["standardize"] = ConfigEntry{"false", "--no-standardize"};
        if (verbose) flags["verbose"] = ConfigEntry{"true", "--verbose"};
        overlay(config, flags);
        settings = settings_from(config, SKPCA_DATA_DIR);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "run") return cmd_run(settings);
        if (command == "sweep") return cmd_sweep(settings);
        if (command == "check") return cmd_check(settings);
        return cmd_synth(settings);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::ConfigError ? kConfigError : kRuntimeError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
}
