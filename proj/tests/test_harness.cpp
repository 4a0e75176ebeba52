#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "helpers.hpp"
#include "skpca/baselines.hpp"
#include "skpca/harness.hpp"
#include "skpca/spectral.hpp"

using namespace skpca;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.datasets = {"synth"};
    cfg.fractions = {0.02};
    cfg.repetitions = 3;
    cfg.grid_size = 8;
    cfg.data_dir = SKPCA_DATA_DIR;
    return cfg;
}

ReportRow row(const std::string& model, double mean, double std) {
    ReportRow r;
    r.dataset = "d";
    r.fraction = 0.01;
    r.label_count = 7;
    r.model = model;
    r.mean = mean;
    r.std = std;
    r.runs = 10;
    return r;
}

const ReportRow& find_row(const ExperimentReport& report, const std::string& model, PolicyKind policy) {
    for (const ReportRow& r : report.rows)
        if (r.model == model && r.policy == policy) return r;
    throw std::runtime_error("row not found: " + model);
}

}  // namespace

TEST_CASE("model names and policies") {
    for (const char* name : {"skpca-k0", "skpca-k1", "skpca-k3", "semi-lssvm", "subs-lssvm"})
        CHECK(ModelSpec::parse(name).name() == name);
    CHECK(ModelSpec::parse("skpca-k2") == ModelSpec{ModelKind::SemiKpca, 2});
    CHECK(code_of([] { ModelSpec::parse("svm"); }) == ErrorCode::ConfigError);
    CHECK(code_of([] { ModelSpec::parse("skpca-kx"); }) == ErrorCode::ConfigError);
    CHECK(parse_policy("best") == PolicyKind::Best);
    CHECK(parse_policy("fixed") == PolicyKind::Fixed);
    CHECK(code_of([] { parse_policy("median"); }) == ErrorCode::ConfigError);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg = small_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.repetitions = 0;
    CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::ConfigError);
    cfg = small_config();
    cfg.fractions = {0.0};
    CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::ConfigError);
    cfg.fractions = {1.2};
    CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::ConfigError);
}

TEST_CASE("seeds") {
    CHECK(repetition_seed(5, 0) == 5);
    CHECK(repetition_seed(5, 3) == 8);
    CHECK(mask_seed(1, 0.01) == mask_seed(1, 0.01));
    CHECK(mask_seed(1, 0.01) != mask_seed(1, 0.02));
    CHECK(mask_seed(1, 0.01) != mask_seed(2, 0.01));
}

TEST_CASE("run_experiment on a small synth run") {
    const ExperimentConfig cfg = small_config();
    const ExperimentReport report = run_experiment(cfg);
    REQUIRE_FALSE(report.has_errors());
    CHECK(report.rows.size() == 8);  // 4 models x 2 policies
    CHECK(report.runs.size() == 24);

    SUBCASE("deterministic") {
        const ExperimentReport again = run_experiment(cfg);
        std::ostringstream a;
        std::ostringstream b;
        write_results(a, report);
        write_results(b, again);
        CHECK(a.str() == b.str());
        write_summary(a, report);
        write_summary(b, again);
        CHECK(a.str() == b.str());
    }

    SUBCASE("every model sees the same mask; accuracy counts unlabeled points only") {
        const Dataset ds = prepare_dataset("synth", cfg);
        const KernelMatrix K = gram(ds.X, KernelSpec::gaussian_median());
        for (const RunRecord& run : report.runs) {
            CHECK(run.seed == repetition_seed(cfg.base_seed, run.repetition));
            CHECK(run.label_count == 8);
            CHECK(run.accuracy >= 0.0);
            CHECK(run.accuracy <= 100.0);
            const double correct = run.accuracy * static_cast<double>(ds.size() - run.label_count) / 100.0;
            CHECK(std::abs(correct - std::round(correct)) < 1e-9);
        }
        // Refit the LS-SVM baselines on independently drawn masks.
        for (const RunRecord& run : report.runs) {
            if (run.model == "skpca-k0" || run.model == "skpca-k1") continue;
            const MaskedDataset m = mask_labels(ds, run.fraction, mask_seed(run.seed, run.fraction));
            const std::vector<int> pred = run.model == "semi-lssvm" ? predict(fit_semi_lssvm(K, m.revealed, run.gamma))
                                                                    : predict(fit_subs_lssvm(K, m.revealed, run.gamma));
            std::size_t correct = 0;
            for (std::size_t i = 0; i < ds.size(); ++i)
                if (!m.mask[i] && pred[i] == ds.labels[i]) ++correct;
            CHECK(run.accuracy ==
                  doctest::Approx(100.0 * static_cast<double>(correct) / static_cast<double>(ds.size() - 8)));
        }
    }

    SUBCASE("fixed gamma rules") {
        const ReportRow& semi = find_row(report, "semi-lssvm", PolicyKind::Fixed);
        const ReportRow& subs = find_row(report, "subs-lssvm", PolicyKind::Fixed);
        for (double g : semi.gammas) CHECK(g == doctest::Approx(10.0 * 2 / 400.0));
        for (double g : subs.gammas) CHECK(g == doctest::Approx(100.0 * 2 / 400.0));
    }

    SUBCASE("best gamma is recorded per repetition") {
        const ReportRow& k1 = find_row(report, "skpca-k1", PolicyKind::Best);
        CHECK(k1.gammas.size() == 3);
        CHECK(k1.seeds == std::vector<std::uint64_t>{0, 1, 2});
    }

    SUBCASE("rows are independent of model order") {
        ExperimentConfig reversed = cfg;
        std::reverse(reversed.models.begin(), reversed.models.end());
        const ExperimentReport other = run_experiment(reversed);
        REQUIRE(other.rows.size() == report.rows.size());
        for (std::size_t i = 0; i < report.rows.size(); ++i) {
            CHECK(other.rows[i].model == report.rows[i].model);
            CHECK(other.rows[i].mean == report.rows[i].mean);
            CHECK(other.rows[i].rank == report.rows[i].rank);
            CHECK(other.rows[i].gammas == report.rows[i].gammas);
        }
        CHECK(rank_and_format(other) == rank_and_format(report));
    }
}

TEST_CASE("per-cell errors do not stop the run") {
    ExperimentConfig cfg = small_config();
    cfg.datasets = {"nosuchset", "synth"};
    cfg.models = {{ModelKind::SemiKpca, 1}, {ModelKind::SemiKpca, 500}};
    cfg.policies = {PolicyKind::Fixed};
    const ExperimentReport report = run_experiment(cfg);
    CHECK(report.has_errors());
    std::size_t ok = 0;
    for (const ReportRow& r : report.rows) {
        if (r.error.empty()) {
            ++ok;
            CHECK(r.dataset == "synth");
            CHECK(r.model == "skpca-k1");
            CHECK(r.rank == 1);
        } else {
            CHECK(r.runs == 0);
        }
    }
    CHECK(ok == 1);
    CHECK(report.rows.size() == 4);
    CHECK(rank_and_format(report).find("error") != std::string::npos);
}

TEST_CASE("rank_rows") {
    SUBCASE("83.0 / 72.2 / 71.3") {
        std::vector<ReportRow> rows{row("subs-lssvm", 71.3, 10.4), row("skpca-k1", 83.0, 0.7),
                                    row("semi-lssvm", 72.2, 6.0)};
        rank_rows(rows);
        CHECK(rows[0].rank == 3);
        CHECK(rows[1].rank == 1);
        CHECK(rows[2].rank == 2);
    }
    SUBCASE("ties on mean go to the lower std") {
        std::vector<ReportRow> rows{row("a", 80.0, 2.0), row("b", 80.0, 1.0)};
        rank_rows(rows);
        CHECK(rows[0].rank == 2);
        CHECK(rows[1].rank == 1);
    }
    SUBCASE("full ties fall back to model name") {
        std::vector<ReportRow> rows{row("subs-lssvm", 50.0, 1.0), row("semi-lssvm", 50.0, 1.0),
                                    row("skpca-k1", 50.0, 1.0)};
        rank_rows(rows);
        CHECK(rows[0].rank == 3);
        CHECK(rows[1].rank == 1);
        CHECK(rows[2].rank == 2);
    }
    SUBCASE("one model") {
        std::vector<ReportRow> rows{row("skpca-k1", 10.0, 0.0)};
        rank_rows(rows);
        CHECK(rows[0].rank == 1);
    }
    SUBCASE("blocks are ranked separately") {
        std::vector<ReportRow> rows{row("a", 90.0, 0.0), row("b", 80.0, 0.0)};
        rows[1].fraction = 0.02;
        rank_rows(rows);
        CHECK(rows[0].rank == 1);
        CHECK(rows[1].rank == 1);
    }
}

TEST_CASE("rank_and_format") {
    ExperimentReport report;
    report.rows = {row("skpca-k1", 83.04, 0.71), row("semi-lssvm", 72.2, 6.0), row("subs-lssvm", 71.3, 10.4)};
    rank_rows(report.rows);
    const std::string table = rank_and_format(report);
    CHECK(table.find("83.0+-0.7 [1]") != std::string::npos);
    CHECK(table.find("72.2+-6.0 [2]") != std::string::npos);
    CHECK(table.find("71.3+-10.4 [3]") != std::string::npos);
    CHECK(table.find("skpca-k1") < table.find("semi-lssvm"));
    CHECK(table.find("semi-lssvm") < table.find("subs-lssvm"));
}

TEST_CASE("gamma_sweep") {
    SweepConfig cfg;
    cfg.dataset = "synth";
    cfg.fraction = 0.01;
    cfg.grid_size = 12;
    cfg.repetitions = 3;
    cfg.data_dir = SKPCA_DATA_DIR;

    const std::vector<SweepCurve> curves = gamma_sweep(cfg);
    REQUIRE(curves.size() == 4);
    ExperimentConfig exp;
    exp.data_dir = SKPCA_DATA_DIR;
    const Dataset ds = prepare_dataset("synth", exp);
    const Eigendecomposition e = eig_sym(gram(ds.X, KernelSpec::gaussian_median()));

    for (const SweepCurve& c : curves) {
        CAPTURE(c.model);
        CHECK(c.points.size() == 12);
        CHECK(c.label_count == 4);
        CHECK(c.baseline_accuracy == 50.0);
        CHECK(c.inv_lambda1 == doctest::Approx(1.0 / e.values[0]));
        CHECK(c.inv_lambda2 == doctest::Approx(1.0 / e.values[1]));
        for (std::size_t i = 1; i < c.points.size(); ++i) CHECK(c.points[i].gamma > c.points[i - 1].gamma);
        for (const SweepPoint& p : c.points) {
            CHECK(p.mean >= 0.0);
            CHECK(p.mean <= 100.0);
        }
        CHECK(c.best_gamma >= c.points.front().gamma);
        CHECK(c.best_gamma <= c.points.back().gamma);
        if (c.model.rfind("skpca-k", 0) == 0) {
            const std::size_t k = ModelSpec::parse(c.model).k;
            for (const SweepPoint& p : c.points) CHECK(p.gamma < 1.0 / e.values[static_cast<Eigen::Index>(k)]);
            CHECK(c.heuristic_gamma < 1.0 / e.values[static_cast<Eigen::Index>(k)]);
        }
    }

    SUBCASE("grid of one point") {
        cfg.grid_size = 1;
        for (const SweepCurve& c : gamma_sweep(cfg)) {
            CHECK(c.points.size() == 1);
            CHECK(c.best_gamma == c.points[0].gamma);
        }
    }
    SUBCASE("bad input") {
        cfg.grid_size = 0;
        CHECK(code_of([&] { gamma_sweep(cfg); }) == ErrorCode::ConfigError);
        cfg.grid_size = 4;
        cfg.dataset = "nosuchset";
        CHECK(code_of([&] { gamma_sweep(cfg); }) == ErrorCode::UnknownDataset);
    }
}

TEST_CASE("writers") {
    SweepCurve c;
    c.model = "skpca-k1";
    c.points = {{0.5, 90.0, 1.0}, {1.0, 95.5, 0.5}};
    std::ostringstream os;
    write_curve(os, c);
    CHECK(os.str() == "gamma,mean_acc,std_acc\n0.5,90,1\n1,95.5,0.5\n");
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02e23, 1e-300, 97.6}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("parallel_for") {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, 4, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
    parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
    CHECK_THROWS_AS(parallel_for(10, 3,
                                 [](std::size_t i) {
                                     if (i == 7) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}

TEST_CASE("desk-scale results" * doctest::timeout(300)) {
    SUBCASE("synth, 10%, k=1, best gamma") {
        ExperimentConfig cfg = small_config();
        cfg.fractions = {0.10};
        cfg.repetitions = 10;
        cfg.grid_size = 40;
        cfg.models = {{ModelKind::SemiKpca, 1}};
        cfg.policies = {PolicyKind::Best};
        const ExperimentReport report = run_experiment(cfg);
        REQUIRE(report.rows.size() == 1);
        CHECK(report.rows[0].label_count == 40);
        CHECK(report.rows[0].mean == doctest::Approx(97.6).epsilon(2.0 / 97.6));
    }
    SUBCASE("heart, 1%, k=1, best gamma") {
        ExperimentConfig cfg = small_config();
        cfg.datasets = {"heart"};
        cfg.fractions = {0.01};
        cfg.repetitions = 10;
        cfg.grid_size = 40;
        cfg.models = {{ModelKind::SemiKpca, 1}};
        cfg.policies = {PolicyKind::Best};
        const ExperimentReport report = run_experiment(cfg);
        REQUIRE(report.rows.size() == 1);
        CHECK(report.rows[0].label_count == 3);
        CHECK(report.rows[0].mean >= 57.0);
        CHECK(report.rows[0].mean <= 90.0);
    }
}
