#include "skpca/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "skpca/baselines.hpp"
#include "skpca/error.hpp"
#include "skpca/kpca.hpp"
#include "skpca/semikpca.hpp"
#include "skpca/spectral.hpp"

namespace skpca {

namespace {

// Accuracy (percent) for every (fraction, repetition) mask at one gamma.
using AccuracyTable = std::vector<std::vector<double>>;

struct DatasetContext {
    explicit DatasetContext(Dataset data) : ds(std::move(data)) {}

    Dataset ds;
    std::unique_ptr<KernelMatrix> K;
    Eigendecomposition eig;
    std::vector<std::vector<MaskedDataset>> masks;  // [fraction][repetition]
    std::vector<std::uint64_t> seeds;                // per repetition
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::unique_ptr<DatasetContext> build_context(const Dataset& prepared,
                                              const std::vector<double>& fractions,
                                              std::size_t repetitions, std::uint64_t base_seed) {
    auto ctx = std::make_unique<DatasetContext>(prepared);
    ctx->K = std::make_unique<KernelMatrix>(gram(ctx->ds.X, KernelSpec::gaussian_median()));
    ctx->eig = eig_sym(*ctx->K);
    for (std::size_t r = 0; r < repetitions; ++r) ctx->seeds.push_back(repetition_seed(base_seed, r));
    for (double f : fractions) {
        std::vector<MaskedDataset> per_rep;
        for (std::size_t r = 0; r < repetitions; ++r)
            per_rep.push_back(mask_labels(ctx->ds, f, mask_seed(ctx->seeds[r], f)));
        ctx->masks.push_back(std::move(per_rep));
    }
    return ctx;
}

// Scores one model over all masks of a context, for any gamma.
class ModelScorer {
public:
    ModelScorer(const DatasetContext& ctx, const ModelSpec& model) : ctx_(ctx), model_(model) {
        if (model.kind == ModelKind::SemiKpca) {
            if (model.k >= static_cast<std::size_t>(ctx.K->size()))
                fail(ErrorCode::InvalidArgument, "k must be smaller than N");
            spectrum_ = top_k(ctx.eig, model.k);
            deflated_ = std::make_unique<DeflatedKernel>(deflate(*ctx.K, spectrum_));
        }
    }

    std::vector<double> grid(std::size_t count) const {
        if (model_.kind == ModelKind::SemiKpca) return semikpca_gamma_grid(spectrum_, count);
        return lssvm_gamma_grid(d(), n(), count);
    }

    double fixed_gamma() const {
        switch (model_.kind) {
            case ModelKind::SemiKpca: {
                const HeuristicGamma h = heuristic_gamma(spectrum_);
                if (h.degenerate || !within_convex_interval(h.value, spectrum_.next_eigenvalue))
                    return (1.0 - kBoundaryShrink) / spectrum_.next_eigenvalue;
                return h.value;
            }
            case ModelKind::SemiLssvm: return fixed_gamma_rule(LssvmMode::SemiZeroTarget, d(), n());
            case ModelKind::SubsLssvm: return fixed_gamma_rule(LssvmMode::LabeledSubset, d(), n());
        }
        return 0.0;
    }

    AccuracyTable score(double gamma) const {
        AccuracyTable table(ctx_.masks.size());
        switch (model_.kind) {
            case ModelKind::SemiKpca: {
                const SemiKpcaSolver solver(*deflated_, gamma);
                for_each_mask(table, [&](const LabelVector& y) { return predict(solver.solve(y)); });
                break;
            }
            case ModelKind::SemiLssvm: {
                const SemiLssvmSolver solver(*ctx_.K, gamma);
                for_each_mask(table, [&](const LabelVector& y) { return predict(solver.solve(y)); });
                break;
            }
            case ModelKind::SubsLssvm:
                for_each_mask(table, [&](const LabelVector& y) {
                    return predict(fit_subs_lssvm(*ctx_.K, y, gamma));
                });
                break;
        }
        return table;
    }

private:
    std::size_t d() const { return static_cast<std::size_t>(ctx_.ds.X.cols()); }
    std::size_t n() const { return ctx_.ds.size(); }

    template <typename Predict>
    void for_each_mask(AccuracyTable& table, Predict&& predict_fn) const {
        for (std::size_t f = 0; f < ctx_.masks.size(); ++f) {
            table[f].resize(ctx_.masks[f].size());
            for (std::size_t r = 0; r < ctx_.masks[f].size(); ++r) {
                const LabelVector& y = ctx_.masks[f][r].revealed;
                table[f][r] = 100.0 * unlabeled_accuracy(predict_fn(y), y, ctx_.ds.labels);
            }
        }
    }

    const DatasetContext& ctx_;
    ModelSpec model_;
    SpectrumTopK spectrum_;
    std::unique_ptr<DeflatedKernel> deflated_;
};

struct PolicyOutcome {
    AccuracyTable accuracy;                    // [fraction][repetition]
    std::vector<std::vector<double>> gammas;   // same shape
    std::string error;
};

PolicyOutcome evaluate_best(const ModelScorer& scorer, std::size_t grid_size, std::size_t threads) {
    const std::vector<double> grid = scorer.grid(grid_size);
    std::vector<AccuracyTable> tables(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t g) { tables[g] = scorer.score(grid[g]); });

    PolicyOutcome out;
    out.accuracy = tables.front();
    out.gammas.resize(out.accuracy.size());
    for (std::size_t f = 0; f < out.accuracy.size(); ++f)
        out.gammas[f].assign(out.accuracy[f].size(), grid.front());
    // Strictly greater keeps the smallest gamma among ties.
    for (std::size_t g = 1; g < grid.size(); ++g)
        for (std::size_t f = 0; f < out.accuracy.size(); ++f)
            for (std::size_t r = 0; r < out.accuracy[f].size(); ++r)
                if (tables[g][f][r] > out.accuracy[f][r]) {
                    out.accuracy[f][r] = tables[g][f][r];
                    out.gammas[f][r] = grid[g];
                }
    return out;
}

PolicyOutcome evaluate_fixed(const ModelScorer& scorer) {
    const double gamma = scorer.fixed_gamma();
    PolicyOutcome out;
    out.accuracy = scorer.score(gamma);
    out.gammas.resize(out.accuracy.size());
    for (std::size_t f = 0; f < out.accuracy.size(); ++f)
        out.gammas[f].assign(out.accuracy[f].size(), gamma);
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string one_decimal(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << v;
    return os.str();
}

std::string safe_file_token(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
    return out;
}

// Canonical model order for rows and table columns: Semi-KPCA by k, then the baselines.
std::pair<int, std::size_t> model_order(const std::string& name) {
    try {
        const ModelSpec m = ModelSpec::parse(name);
        return {static_cast<int>(m.kind), m.k};
    } catch (const Error&) {
        return {3, 0};
    }
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(ErrorCode::IoError, "cannot write " + path.string());
    body(os);
    if (!os) fail(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace

std::string ModelSpec::name() const {
    switch (kind) {
        case ModelKind::SemiKpca: return "skpca-k" + std::to_string(k);
        case ModelKind::SemiLssvm: return "semi-lssvm";
        case ModelKind::SubsLssvm: return "subs-lssvm";
    }
    return "unknown";
}

ModelSpec ModelSpec::parse(const std::string& name) {
    if (name == "semi-lssvm") return {ModelKind::SemiLssvm, 0};
    if (name == "subs-lssvm") return {ModelKind::SubsLssvm, 0};
    const std::string prefix = "skpca-k";
    if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size()) {
        const std::string digits = name.substr(prefix.size());
        std::size_t k = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (ec == std::errc() && ptr == digits.data() + digits.size()) return {ModelKind::SemiKpca, k};
    }
    fail(ErrorCode::ConfigError,
         "unknown model '" + name + "' (expected skpca-k<k>, semi-lssvm or subs-lssvm)");
}

const char* to_string(PolicyKind policy) noexcept {
    return policy == PolicyKind::Best ? "best" : "fixed";
}

PolicyKind parse_policy(const std::string& name) {
    if (name == "best") return PolicyKind::Best;
    if (name == "fixed") return PolicyKind::Fixed;
    fail(ErrorCode::ConfigError, "unknown gamma policy '" + name + "' (expected best or fixed)");
}

void ExperimentConfig::validate() const {
    if (datasets.empty()) fail(ErrorCode::ConfigError, "no datasets given");
    if (fractions.empty()) fail(ErrorCode::ConfigError, "no label fractions given");
    for (double f : fractions)
        if (!(f > 0.0 && f <= 1.0))
            fail(ErrorCode::ConfigError, "label fraction " + format_double(f) + " outside (0, 1]");
    if (repetitions < 1) fail(ErrorCode::ConfigError, "repetitions must be >= 1");
    if (models.empty()) fail(ErrorCode::ConfigError, "no models given");
    if (policies.empty()) fail(ErrorCode::ConfigError, "no gamma policies given");
    if (grid_size < 1) fail(ErrorCode::ConfigError, "grid size must be >= 1");
}

std::uint64_t repetition_seed(std::uint64_t base_seed, std::size_t repetition) {
    return base_seed + repetition;
}

std::uint64_t mask_seed(std::uint64_t repetition_seed, double fraction) {
    std::uint64_t bits = 0;
    static_assert(sizeof(bits) == sizeof(fraction));
    std::memcpy(&bits, &fraction, sizeof(bits));
    return splitmix64(splitmix64(repetition_seed) ^ bits);
}

Dataset prepare_dataset(const std::string& name, const ExperimentConfig& cfg) {
    Dataset ds = load_fixture(name, cfg.data_dir, cfg.synth_seed);
    if (cfg.standardize) {
        Standardized s = standardize(ds.X.values());
        if (s.X.cols() == 0) fail(ErrorCode::InvalidArgument, "every column of '" + name + "' is constant");
        ds.X = DataMatrix(std::move(s.X));
    }
    return ds;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport report;

    for (const std::string& name : cfg.datasets) {
        std::unique_ptr<DatasetContext> ctx;
        std::string dataset_error;
        try {
            ctx = build_context(prepare_dataset(name, cfg), cfg.fractions, cfg.repetitions, cfg.base_seed);
        } catch (const Error& e) {
            dataset_error = e.what();
            report.errors.push_back(name + ": " + dataset_error);
        }

        for (const ModelSpec& model : cfg.models) {
            std::map<PolicyKind, PolicyOutcome> outcomes;
            std::unique_ptr<ModelScorer> scorer;
            std::string model_error = dataset_error;
            if (model_error.empty()) {
                try {
                    scorer = std::make_unique<ModelScorer>(*ctx, model);
                } catch (const Error& e) {
                    model_error = e.what();
                }
            }
            for (PolicyKind policy : cfg.policies) {
                PolicyOutcome outcome;
                if (!model_error.empty()) {
                    outcome.error = model_error;
                } else {
                    try {
                        outcome = policy == PolicyKind::Best ? evaluate_best(*scorer, cfg.grid_size, cfg.threads)
                                                             : evaluate_fixed(*scorer);
                    } catch (const Error& e) {
                        outcome.error = e.what();
                    }
                }
                if (!outcome.error.empty() && dataset_error.empty())
                    report.errors.push_back(name + "/" + model.name() + "/" + to_string(policy) + ": " +
                                            outcome.error);
                outcomes[policy] = std::move(outcome);
            }

            for (std::size_t f = 0; f < cfg.fractions.size(); ++f) {
                for (PolicyKind policy : cfg.policies) {
                    const PolicyOutcome& outcome = outcomes[policy];
                    ReportRow row;
                    row.dataset = name;
                    row.fraction = cfg.fractions[f];
                    row.label_count = ctx ? ctx->masks[f].front().revealed.labeled_count() : 0;
                    row.model = model.name();
                    row.policy = policy;
                    row.error = outcome.error;
                    if (outcome.error.empty()) {
                        for (std::size_t r = 0; r < cfg.repetitions; ++r) {
                            RunRecord run;
                            run.dataset = name;
                            run.fraction = cfg.fractions[f];
                            run.label_count = ctx->masks[f][r].revealed.labeled_count();
                            run.model = row.model;
                            run.policy = policy;
                            run.repetition = r;
                            run.seed = ctx->seeds[r];
                            run.gamma = outcome.gammas[f][r];
                            run.accuracy = outcome.accuracy[f][r];
                            report.runs.push_back(run);
                            row.gammas.push_back(run.gamma);
                            row.seeds.push_back(run.seed);
                        }
                        row.mean = mean_of(outcome.accuracy[f]);
                        row.std = sample_std(outcome.accuracy[f]);
                        row.runs = cfg.repetitions;
                    }
                    report.rows.push_back(std::move(row));
                }
            }
        }
    }

    // Fixed key order, independent of the order models were evaluated in.
    auto dataset_pos = [&](const std::string& n) {
        return std::find(cfg.datasets.begin(), cfg.datasets.end(), n) - cfg.datasets.begin();
    };
    auto row_key = [&](const ReportRow& r) {
        return std::make_tuple(dataset_pos(r.dataset), r.fraction, static_cast<int>(r.policy),
                               model_order(r.model), r.model);
    };
    std::stable_sort(report.rows.begin(), report.rows.end(),
                     [&](const ReportRow& a, const ReportRow& b) { return row_key(a) < row_key(b); });
    std::stable_sort(report.runs.begin(), report.runs.end(), [&](const RunRecord& a, const RunRecord& b) {
        return std::make_tuple(dataset_pos(a.dataset), a.fraction, static_cast<int>(a.policy),
                               model_order(a.model), a.model, a.repetition) <
               std::make_tuple(dataset_pos(b.dataset), b.fraction, static_cast<int>(b.policy),
                               model_order(b.model), b.model, b.repetition);
    });
    rank_rows(report.rows);
    return report;
}

void rank_rows(std::vector<ReportRow>& rows) {
    std::map<std::tuple<std::string, double, int>, std::vector<ReportRow*>> blocks;
    for (ReportRow& row : rows)
        blocks[{row.dataset, row.fraction, static_cast<int>(row.policy)}].push_back(&row);
    for (auto& [key, members] : blocks) {
        std::stable_sort(members.begin(), members.end(), [](const ReportRow* a, const ReportRow* b) {
            const bool a_ok = a->error.empty();
            const bool b_ok = b->error.empty();
            if (a_ok != b_ok) return a_ok;
            if (a->mean != b->mean) return a->mean > b->mean;
            if (a->std != b->std) return a->std < b->std;
            return a->model < b->model;
        });
        for (std::size_t i = 0; i < members.size(); ++i) members[i]->rank = i + 1;
    }
}

std::string rank_and_format(const ExperimentReport& report) {
    std::vector<std::string> models;
    for (const ReportRow& row : report.rows)
        if (std::find(models.begin(), models.end(), row.model) == models.end()) models.push_back(row.model);
    std::sort(models.begin(), models.end(), [](const std::string& a, const std::string& b) {
        return std::make_pair(model_order(a), a) < std::make_pair(model_order(b), b);
    });

    constexpr int kNameWidth = 14;
    constexpr int kCellWidth = 20;
    std::ostringstream os;
    os << std::left << std::setw(kNameWidth) << "dataset" << std::setw(8) << "labels" << std::setw(8)
       << "policy";
    for (const std::string& m : models) os << std::setw(kCellWidth) << m;
    os << "\n";

    std::vector<const ReportRow*> ordered;
    for (const ReportRow& row : report.rows) ordered.push_back(&row);
    std::size_t i = 0;
    while (i < ordered.size()) {
        const ReportRow& head = *ordered[i];
        std::map<std::string, const ReportRow*> cells;
        std::size_t j = i;
        while (j < ordered.size() && ordered[j]->dataset == head.dataset &&
               ordered[j]->fraction == head.fraction && ordered[j]->policy == head.policy) {
            cells[ordered[j]->model] = ordered[j];
            ++j;
        }
        os << std::setw(kNameWidth) << head.dataset << std::setw(8) << head.label_count << std::setw(8)
           << to_string(head.policy);
        for (const std::string& m : models) {
            std::string cell = "-";
            if (auto it = cells.find(m); it != cells.end()) {
                const ReportRow& r = *it->second;
                cell = r.error.empty() ? one_decimal(r.mean) + "+-" + one_decimal(r.std) + " [" +
                                             std::to_string(r.rank) + "]"
                                       : "error";
            }
            os << std::setw(kCellWidth) << cell;
        }
        os << "\n";
        i = j;
    }
    return os.str();
}

std::vector<SweepCurve> gamma_sweep(const SweepConfig& cfg) {
    if (cfg.grid_size < 1) fail(ErrorCode::ConfigError, "grid size must be >= 1");
    if (cfg.repetitions < 1) fail(ErrorCode::ConfigError, "repetitions must be >= 1");
    if (cfg.models.empty()) fail(ErrorCode::ConfigError, "no models given");

    ExperimentConfig exp;
    exp.data_dir = cfg.data_dir;
    exp.standardize = cfg.standardize;
    exp.synth_seed = cfg.synth_seed;
    const auto ctx = build_context(prepare_dataset(cfg.dataset, exp), {cfg.fraction}, cfg.repetitions,
                                   cfg.base_seed);

    const double inv_lambda1 = 1.0 / ctx->eig.values[0];
    const double inv_lambda2 =
        ctx->eig.values.size() > 1 && ctx->eig.values[1] > 0.0 ? 1.0 / ctx->eig.values[1]
                                                               : std::numeric_limits<double>::infinity();

    std::vector<SweepCurve> curves;
    for (const ModelSpec& model : cfg.models) {
        const ModelScorer scorer(*ctx, model);
        const std::vector<double> grid = scorer.grid(cfg.grid_size);
        std::vector<AccuracyTable> tables(grid.size());
        parallel_for(grid.size(), cfg.threads, [&](std::size_t g) { tables[g] = scorer.score(grid[g]); });

        SweepCurve curve;
        curve.dataset = cfg.dataset;
        curve.fraction = cfg.fraction;
        curve.label_count = ctx->masks[0].front().revealed.labeled_count();
        curve.model = model.name();
        curve.inv_lambda1 = inv_lambda1;
        curve.inv_lambda2 = inv_lambda2;
        curve.baseline_accuracy = 100.0 * ctx->ds.majority_rate();
        curve.heuristic_gamma = scorer.fixed_gamma();
        double best = -1.0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            SweepPoint p{grid[g], mean_of(tables[g][0]), sample_std(tables[g][0])};
            if (p.mean > best) {
                best = p.mean;
                curve.best_gamma = p.gamma;
            }
            curve.points.push_back(p);
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) fail(ErrorCode::InvalidArgument, "cannot format number");
    return std::string(buf, ptr);
}

void write_results(std::ostream& os, const ExperimentReport& report) {
    os << "dataset,labels,model,policy,seed,gamma,accuracy\n";
    for (const RunRecord& r : report.runs)
        os << csv_escape(r.dataset) << ',' << r.label_count << ',' << r.model << ',' << to_string(r.policy)
           << ',' << r.seed << ',' << format_double(r.gamma) << ',' << format_double(r.accuracy) << '\n';
}

void write_summary(std::ostream& os, const ExperimentReport& report) {
    os << "dataset,fraction,labels,model,policy,mean_accuracy,std_accuracy,rank,runs,error\n";
    for (const ReportRow& r : report.rows)
        os << csv_escape(r.dataset) << ',' << format_double(r.fraction) << ',' << r.label_count << ','
           << r.model << ',' << to_string(r.policy) << ',' << format_double(r.mean) << ','
           << format_double(r.std) << ',' << r.rank << ',' << r.runs << ',' << csv_escape(r.error) << '\n';
}

void write_curve(std::ostream& os, const SweepCurve& curve) {
    os << "gamma,mean_acc,std_acc\n";
    for (const SweepPoint& p : curve.points)
        os << format_double(p.gamma) << ',' << format_double(p.mean) << ',' << format_double(p.std) << '\n';
}

void write_markers(std::ostream& os, const std::vector<SweepCurve>& curves) {
    os << "model,best_gamma,heuristic_gamma,inv_lambda1,inv_lambda2,baseline_acc\n";
    for (const SweepCurve& c : curves)
        os << c.model << ',' << format_double(c.best_gamma) << ',' << format_double(c.heuristic_gamma) << ','
           << format_double(c.inv_lambda1) << ',' << format_double(c.inv_lambda2) << ','
           << format_double(c.baseline_accuracy) << '\n';
}

void write_report_files(const std::filesystem::path& dir, const ExperimentReport& report) {
    std::filesystem::create_directories(dir);
    write_file(dir / "results.csv", [&](std::ostream& os) { write_results(os, report); });
    write_file(dir / "summary.csv", [&](std::ostream& os) { write_summary(os, report); });
    write_file(dir / "table.txt", [&](std::ostream& os) { os << rank_and_format(report); });
    if (report.has_errors())
        write_file(dir / "errors.txt", [&](std::ostream& os) {
            for (const std::string& e : report.errors) os << e << '\n';
        });
}

void write_sweep_files(const std::filesystem::path& dir, const std::vector<SweepCurve>& curves) {
    if (curves.empty()) return;
    std::filesystem::create_directories(dir);
    const std::string stem = "sweep_" + safe_file_token(curves.front().dataset);
    for (const SweepCurve& c : curves)
        write_file(dir / (stem + "_" + safe_file_token(c.model) + ".csv"),
                   [&](std::ostream& os) { write_curve(os, c); });
    write_file(dir / (stem + "_markers.csv"), [&](std::ostream& os) { write_markers(os, curves); });
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (std::thread& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace skpca
