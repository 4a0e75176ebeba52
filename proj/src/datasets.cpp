#include "skpca/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "skpca/error.hpp"

namespace skpca {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char delimiter) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, delimiter)) out.push_back(trim(field));
    if (!line.empty() && line.back() == delimiter) out.emplace_back();
    return out;
}

char detect_delimiter(const std::string& line) {
    return line.find(';') != std::string::npos && line.find(',') == std::string::npos ? ';' : ',';
}

bool parse_double(const std::string& token, double& out) {
    if (token.empty()) return false;
    std::size_t used = 0;
    try {
        out = std::stod(token, &used);
    } catch (const std::exception&) {
        return false;
    }
    return used == token.size() && std::isfinite(out);
}

std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

std::size_t parse_count(const std::string& token, const std::string& what) {
    double v = 0.0;
    if (!parse_double(token, v) || v < 0.0 || v != std::floor(v))
        fail(ErrorCode::ParseError, "manifest: bad " + what + " '" + token + "'");
    return static_cast<std::size_t>(v);
}

}  // namespace

double Dataset::majority_rate() const {
    const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    const std::size_t majority = std::max(positives, labels.size() - positives);
    return static_cast<double>(majority) / static_cast<double>(labels.size());
}

Dataset load_delimited(const std::filesystem::path& path, const LabelSchema& schema,
                       const std::string& name) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = schema.has_header;
    char delimiter = schema.delimiter;
    std::size_t width = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '@') continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        if (delimiter == '\0') delimiter = detect_delimiter(stripped);

        const std::vector<std::string> fields = split(stripped, delimiter);
        if (width == 0) width = fields.size();
        if (fields.size() != width || width < 2)
            fail(ErrorCode::ParseError, path.filename().string() + ": row " + std::to_string(line_no) +
                                            " has " + std::to_string(fields.size()) + " columns, expected " +
                                            std::to_string(width));

        const auto label_col = static_cast<std::size_t>(
            schema.label_column < 0 ? static_cast<int>(width) + schema.label_column : schema.label_column);
        if (label_col >= width)
            fail(ErrorCode::ParseError, "label column " + std::to_string(schema.label_column) +
                                            " outside a " + std::to_string(width) + "-column row");

        std::vector<double> values;
        values.reserve(width - 1);
        for (std::size_t c = 0; c < width; ++c) {
            if (c == label_col) continue;
            double v = 0.0;
            if (fields[c] == "?" || !parse_double(fields[c], v))
                fail(ErrorCode::ParseError, path.filename().string() + ": row " +
                                                std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                                                ": missing or non-numeric value '" + fields[c] + "'");
            values.push_back(v);
        }

        const std::string& token = fields[label_col];
        int label = 0;
        if (auto it = schema.encoding.find(token); it != schema.encoding.end())
            label = it->second;
        else if (schema.rest)
            label = *schema.rest;
        else
            fail(ErrorCode::UnknownLabel, path.filename().string() + ": row " + std::to_string(line_no) +
                                              ": label '" + token + "' has no encoding");
        if (label != -1 && label != 1)
            fail(ErrorCode::InvalidArgument, "label encodings must be -1 or +1");

        rows.push_back(std::move(values));
        labels.push_back(label);
    }

    if (rows.size() < 2)
        fail(ErrorCode::NotEnoughPoints,
             path.filename().string() + " has " + std::to_string(rows.size()) + " data row(s)");
    const bool has_pos = std::find(labels.begin(), labels.end(), 1) != labels.end();
    const bool has_neg = std::find(labels.begin(), labels.end(), -1) != labels.end();
    if (!has_pos || !has_neg)
        fail(ErrorCode::NotBinary, path.filename().string() + " does not contain both classes");

    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width - 1));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c + 1 < width; ++c)
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];

    return Dataset{name.empty() ? path.stem().string() : name, DataMatrix(std::move(X)),
                   std::move(labels), {}};
}

std::vector<Eigen::Vector2d> synth_centers(const SynthLayout& layout) {
    const double s = layout.sigma;
    std::vector<double> x{0.0, layout.same_class, layout.same_class + layout.between_class,
                          2.0 * layout.same_class + layout.between_class};
    const double mid = 0.5 * x.back();
    std::vector<Eigen::Vector2d> centers;
    for (double v : x) centers.emplace_back((v - mid) * s, 0.0);
    return centers;
}

Dataset synth_four_gaussians(std::uint64_t seed, const SynthLayout& layout) {
    if (!(layout.sigma > 0.0) || layout.points_per_cluster == 0)
        fail(ErrorCode::InvalidArgument, "synthetic layout needs sigma > 0 and non-empty clusters");
    const std::vector<Eigen::Vector2d> centers = synth_centers(layout);
    const int cluster_label[4] = {1, 1, -1, -1};

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t per = layout.points_per_cluster;
    Eigen::MatrixXd X(static_cast<Eigen::Index>(4 * per), 2);
    std::vector<int> labels(4 * per);
    for (std::size_t c = 0; c < 4; ++c) {
        for (std::size_t p = 0; p < per; ++p) {
            const auto row = static_cast<Eigen::Index>(c * per + p);
            X(row, 0) = centers[c].x() + layout.sigma * normal(rng);
            X(row, 1) = centers[c].y() + layout.sigma * normal(rng);
            labels[c * per + p] = cluster_label[c];
        }
    }
    return Dataset{"synth", DataMatrix(std::move(X)), std::move(labels), {}};
}

Standardized standardize(const Eigen::MatrixXd& X) {
    Standardized out;
    std::vector<Eigen::Index> kept;
    const auto n = static_cast<double>(X.rows());
    Eigen::VectorXd mean(X.cols());
    Eigen::VectorXd scale(X.cols());
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        mean[c] = X.col(c).sum() / n;
        const double var = (X.col(c).array() - mean[c]).square().sum() / n;
        scale[c] = std::sqrt(var);
        if (var <= 0.0 || !(scale[c] > 1e-12 * std::max(1.0, std::abs(mean[c])))) {
            out.dropped_columns.push_back(static_cast<std::size_t>(c));
            out.warnings.push_back("column " + std::to_string(c) + " is constant and was dropped");
        } else {
            kept.push_back(c);
        }
    }
    out.X.resize(X.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) {
        const Eigen::Index c = kept[j];
        out.X.col(static_cast<Eigen::Index>(j)) = (X.col(c).array() - mean[c]) / scale[c];
    }
    return out;
}

std::size_t reveal_count(const Dataset& ds, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        fail(ErrorCode::FractionOutOfRange, "label fraction " + std::to_string(fraction) +
                                                " is outside (0, 1]");
    for (const auto& [f, count] : ds.reveal_counts)
        if (std::abs(f - fraction) <= 1e-12) return count;
    return round_half_up(fraction * static_cast<double>(ds.size()));
}

MaskedDataset mask_labels(const Dataset& ds, double fraction, std::uint64_t seed) {
    const std::size_t n = ds.size();
    const std::size_t count = reveal_count(ds, fraction);
    if (count < 1 || count > n)
        fail(ErrorCode::FractionOutOfRange, "fraction " + std::to_string(fraction) + " reveals " +
                                                std::to_string(count) + " of " + std::to_string(n) + " labels");

    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < n; ++i) (ds.labels[i] == 1 ? pos : neg).push_back(i);

    // Proportional allocation, then at least one per class when two or more are revealed.
    std::size_t take_pos = round_half_up(static_cast<double>(count) * static_cast<double>(pos.size()) /
                                         static_cast<double>(n));
    take_pos = std::min(take_pos, count);
    if (count >= 2) take_pos = std::clamp<std::size_t>(take_pos, 1, count - 1);
    take_pos = std::min(take_pos, pos.size());
    std::size_t take_neg = count - take_pos;
    if (take_neg > neg.size()) {
        take_neg = neg.size();
        take_pos = count - take_neg;
    }

    std::mt19937_64 rng(seed);
    std::shuffle(pos.begin(), pos.end(), rng);
    std::shuffle(neg.begin(), neg.end(), rng);

    std::vector<bool> mask(n, false);
    std::vector<int> revealed(n, 0);
    auto reveal = [&](const std::vector<std::size_t>& idx, std::size_t take) {
        for (std::size_t j = 0; j < take; ++j) {
            mask[idx[j]] = true;
            revealed[idx[j]] = ds.labels[idx[j]];
        }
    };
    reveal(pos, take_pos);
    reveal(neg, take_neg);
    return MaskedDataset{&ds, std::move(mask), LabelVector(std::move(revealed)), seed};
}

std::vector<FixtureEntry> load_manifest(const std::filesystem::path& manifest) {
    std::ifstream in(manifest);
    if (!in) fail(ErrorCode::IoError, "cannot open manifest " + manifest.string());

    std::vector<FixtureEntry> out;
    std::vector<double> fractions;
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const std::vector<std::string> fields = split(stripped, ',');
        if (!header_seen) {
            header_seen = true;
            if (fields.size() < 8 || fields[0] != "name")
                fail(ErrorCode::ParseError, "manifest line " + std::to_string(line_no) + ": bad header");
            for (std::size_t c = 8; c < fields.size(); ++c) {
                const std::string prefix = "labels@";
                double f = 0.0;
                if (fields[c].rfind(prefix, 0) != 0 || !parse_double(fields[c].substr(prefix.size()), f))
                    fail(ErrorCode::ParseError, "manifest: bad column '" + fields[c] + "'");
                fractions.push_back(f);
            }
            continue;
        }
        if (fields.size() != 8 + fractions.size())
            fail(ErrorCode::ParseError, "manifest line " + std::to_string(line_no) + ": expected " +
                                            std::to_string(8 + fractions.size()) + " fields");
        FixtureEntry e;
        e.name = fields[0];
        e.file = fields[1];
        double col = 0.0;
        if (!parse_double(fields[2], col))
            fail(ErrorCode::ParseError, "manifest line " + std::to_string(line_no) + ": bad label column");
        e.schema.label_column = static_cast<int>(col);
        e.schema.encoding[fields[3]] = 1;
        if (fields[4] == "*")
            e.schema.rest = -1;
        else
            e.schema.encoding[fields[4]] = -1;
        e.n = parse_count(fields[5], "n");
        e.d = parse_count(fields[6], "d");
        if (!parse_double(fields[7], e.majority_percent))
            fail(ErrorCode::ParseError, "manifest line " + std::to_string(line_no) + ": bad majority");
        for (std::size_t j = 0; j < fractions.size(); ++j)
            e.reveal_counts.emplace_back(fractions[j], parse_count(fields[8 + j], "label count"));
        out.push_back(std::move(e));
    }
    return out;
}

Dataset load_fixture(const std::string& name, const std::filesystem::path& data_dir,
                     std::uint64_t synth_seed) {
    const std::vector<FixtureEntry> entries = load_manifest(data_dir / "manifest.csv");
    const auto it = std::find_if(entries.begin(), entries.end(),
                                 [&](const FixtureEntry& e) { return e.name == name; });
    if (it == entries.end()) {
        std::string known;
        for (const auto& e : entries) known += (known.empty() ? "" : ", ") + e.name;
        fail(ErrorCode::UnknownDataset, "unknown dataset '" + name + "' (known: " + known + ")");
    }

    Dataset ds = it->file == "-" ? synth_four_gaussians(synth_seed)
                                 : load_delimited(data_dir / it->file, it->schema, it->name);
    ds.name = it->name;
    ds.reveal_counts = it->reveal_counts;

    const double majority = 100.0 * ds.majority_rate();
    if (ds.size() != it->n || static_cast<std::size_t>(ds.X.cols()) != it->d ||
        std::abs(majority - it->majority_percent) > 0.05 + 1e-9) {
        std::ostringstream os;
        os << "fixture '" << name << "' is " << ds.size() << "x" << ds.X.cols() << " with majority "
           << majority << "%, manifest says " << it->n << "x" << it->d << " with " << it->majority_percent << "%";
        fail(ErrorCode::ParseError, os.str());
    }
    return ds;
}

}  // namespace skpca
