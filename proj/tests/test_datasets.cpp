#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <doctest.h>

#include "helpers.hpp"
#include "skpca/datasets.hpp"
#include "skpca/properties.hpp"

using namespace skpca;
namespace fs = std::filesystem;

namespace {

const fs::path kData = SKPCA_DATA_DIR;

fs::path write_temp(const std::string& name, const std::string& text) {
    const fs::path dir = fs::temp_directory_path() / "skpca_dataset_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
}

LabelSchema ab_schema() {
    LabelSchema s;
    s.encoding = {{"a", 1}, {"b", -1}};
    return s;
}

}  // namespace

TEST_CASE("load_delimited") {
    SUBCASE("comma, KEEL header lines and blank lines") {
        const fs::path p = write_temp("ok.dat", "@relation x\n@attribute y\n\n1, 2, a\n3,4,b\n5,6,a\n");
        const Dataset ds = load_delimited(p, ab_schema());
        CHECK(ds.size() == 3);
        CHECK(ds.X.cols() == 2);
        CHECK(ds.labels == std::vector<int>{1, -1, 1});
        CHECK(ds.X.values()(1, 0) == 3.0);
        CHECK(ds.name == "ok");
    }
    SUBCASE("semicolon, header row, label in front") {
        LabelSchema s = ab_schema();
        s.label_column = 0;
        s.has_header = true;
        const Dataset ds = load_delimited(write_temp("semi.csv", "cls;x;y\nb;1;2\na;3;4\n"), s);
        CHECK(ds.labels == std::vector<int>{-1, 1});
        CHECK(ds.X.values()(0, 1) == 2.0);
    }
    SUBCASE("missing value names row and column") {
        try {
            load_delimited(write_temp("missing.dat", "1,2,a\n3,?,b\n"), ab_schema());
            FAIL("expected ParseError");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
            CHECK(std::string(e.what()).find("row 2") != std::string::npos);
            CHECK(std::string(e.what()).find("column 2") != std::string::npos);
        }
    }
    SUBCASE("errors") {
        CHECK(code_of([] { load_delimited(write_temp("one.dat", "1,2,a\n"), ab_schema()); }) ==
              ErrorCode::NotEnoughPoints);
        CHECK(code_of([] { load_delimited(write_temp("unk.dat", "1,2,a\n1,2,c\n"), ab_schema()); }) ==
              ErrorCode::UnknownLabel);
        CHECK(code_of([] { load_delimited(write_temp("mono.dat", "1,2,a\n1,3,a\n"), ab_schema()); }) ==
              ErrorCode::NotBinary);
        CHECK(code_of([] { load_delimited(write_temp("ragged.dat", "1,2,a\n1,b\n"), ab_schema()); }) ==
              ErrorCode::ParseError);
        CHECK(code_of([] { load_delimited(write_temp("text.dat", "1,2,a\n1,x,b\n"), ab_schema()); }) ==
              ErrorCode::ParseError);
        CHECK(code_of([] { load_delimited(kData / "no_such_file.dat", ab_schema()); }) == ErrorCode::IoError);
    }
}

TEST_CASE("bundled fixtures match their manifest rows") {
    struct Expect {
        const char* name;
        std::size_t n, d;
        double majority;
    };
    // Sizes and majority rates of the benchmark collection; breastcancer is
    // the 9-feature Wisconsin file (see README).
    for (const Expect& e : {Expect{"australian", 690, 14, 55.5}, Expect{"breastcancer", 683, 9, 65.0},
                            Expect{"diabetes", 768, 8, 65.1}, Expect{"heart", 270, 13, 55.6},
                            Expect{"iris", 150, 4, 66.7}, Expect{"monk-2", 432, 6, 52.8},
                            Expect{"pima", 768, 8, 65.1}, Expect{"sonar", 208, 60, 53.4},
                            Expect{"synth", 400, 2, 50.0}}) {
        CAPTURE(e.name);
        const Dataset ds = load_fixture(e.name, kData);
        CHECK(ds.size() == e.n);
        CHECK(static_cast<std::size_t>(ds.X.cols()) == e.d);
        CHECK(100.0 * ds.majority_rate() == doctest::Approx(e.majority).epsilon(0.001));
    }
    CHECK(code_of([] { load_fixture("nosuchset", kData); }) == ErrorCode::UnknownDataset);
}

TEST_CASE("reveal counts of the bundled fixtures") {
    const std::map<std::string, std::vector<std::size_t>> expected{
        {"australian", {7, 14, 35, 69}}, {"breastcancer", {7, 14, 34, 68}}, {"diabetes", {8, 15, 39, 77}},
        {"heart", {3, 6, 14, 27}},        {"iris", {2, 3, 8, 15}},           {"monk-2", {4, 9, 22, 43}},
        {"pima", {8, 15, 39, 77}},        {"sonar", {2, 4, 11, 21}},         {"synth", {4, 8, 20, 40}},
    };
    const double fractions[] = {0.01, 0.02, 0.05, 0.10};
    for (const auto& [name, counts] : expected) {
        CAPTURE(name);
        const Dataset ds = load_fixture(name, kData);
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(reveal_count(ds, fractions[j]) == counts[j]);
            CHECK(mask_labels(ds, fractions[j], 0).revealed.labeled_count() == counts[j]);
        }
    }
}

TEST_CASE("synthetic four Gaussians") {
    const Dataset a = synth_four_gaussians(0);
    CHECK(a.size() == 400);
    CHECK(a.X.cols() == 2);
    CHECK(std::count(a.labels.begin(), a.labels.end(), 1) == 200);
    CHECK(a.majority_rate() == 0.5);

    const Dataset b = synth_four_gaussians(0);
    CHECK(a.X.values() == b.X.values());
    CHECK(a.labels == b.labels);
    CHECK(synth_four_gaussians(1).X.values() != a.X.values());

    const SynthLayout layout;
    const std::vector<Eigen::Vector2d> centers = synth_centers(layout);
    REQUIRE(centers.size() == 4);
    CHECK((centers[1] - centers[0]).norm() == doctest::Approx(layout.same_class));
    CHECK((centers[2] - centers[1]).norm() == doctest::Approx(layout.between_class));
    CHECK((centers[3] - centers[2]).norm() == doctest::Approx(layout.same_class));

    for (std::size_t c = 0; c < 4; ++c) {
        const Eigen::MatrixXd block = a.X.values().middleRows(static_cast<Eigen::Index>(100 * c), 100);
        const Eigen::RowVector2d mean = block.colwise().mean();
        CHECK((mean.transpose() - centers[c]).norm() <= 0.35 * layout.sigma);
    }
    for (int label : {1, -1}) {
        Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
        for (std::size_t c = 0; c < 4; ++c) {
            if ((c < 2 ? 1 : -1) != label) continue;
            const Eigen::MatrixXd block = a.X.values().middleRows(static_cast<Eigen::Index>(100 * c), 100);
            const Eigen::MatrixXd centered = block.rowwise() - block.colwise().mean();
            cov += centered.transpose() * centered / 200.0;
        }
        const Eigen::Matrix2d target = layout.sigma * layout.sigma * Eigen::Matrix2d::Identity();
        CHECK((cov - target).norm() <= 0.25 * target.norm());
    }
}

TEST_CASE("standardize") {
    SUBCASE("zero mean, unit variance") {
        const Eigen::MatrixXd X = random_instance::points(10, 10, 3) * 5.0 + Eigen::MatrixXd::Constant(10, 3, 2.0);
        const Standardized s = standardize(X);
        REQUIRE(s.X.cols() == 3);
        for (Eigen::Index c = 0; c < 3; ++c) {
            CHECK(std::abs(s.X.col(c).mean()) <= 1e-12);
            CHECK(std::abs(s.X.col(c).squaredNorm() / 10.0 - 1.0) <= 1e-12);
        }
        CHECK(s.warnings.empty());
        CHECK(((standardize(s.X).X - s.X).cwiseAbs().maxCoeff()) <= 1e-12);
    }
    SUBCASE("constant columns are dropped with a warning") {
        Eigen::MatrixXd X = random_instance::points(11, 6, 3);
        X.col(1).setConstant(4.0);
        const Standardized s = standardize(X);
        CHECK(s.X.cols() == 2);
        CHECK(s.dropped_columns == std::vector<std::size_t>{1});
        CHECK(s.warnings.size() == 1);
    }
}

TEST_CASE("mask_labels") {
    const Dataset iris = load_fixture("iris", kData);
    SUBCASE("two labels on iris, one per class") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const MaskedDataset m = mask_labels(iris, 0.01, seed);
            CHECK(m.revealed.labeled_count() == 2);
            int pos = 0;
            int neg = 0;
            for (std::size_t i = 0; i < iris.size(); ++i) {
                if (m.revealed[i] == 1) ++pos;
                if (m.revealed[i] == -1) ++neg;
            }
            CHECK(pos == 1);
            CHECK(neg == 1);
        }
    }
    SUBCASE("revealed labels agree with the truth under the mask") {
        const MaskedDataset m = mask_labels(iris, 0.1, 3);
        for (std::size_t i = 0; i < iris.size(); ++i)
            CHECK(m.revealed[i] == (m.mask[i] ? iris.labels[i] : 0));
    }
    SUBCASE("fraction 1 reveals everything") {
        const MaskedDataset m = mask_labels(iris, 1.0, 0);
        CHECK(m.revealed.labels() == iris.labels);
    }
    SUBCASE("fraction out of range") {
        CHECK(code_of([&] { mask_labels(iris, 0.0, 0); }) == ErrorCode::FractionOutOfRange);
        CHECK(code_of([&] { mask_labels(iris, 1.5, 0); }) == ErrorCode::FractionOutOfRange);
        CHECK(code_of([&] { mask_labels(iris, 0.001, 0); }) == ErrorCode::FractionOutOfRange);
    }
    SUBCASE("australian 1%: ten seeds, ten distinct masks of seven, reproducible") {
        const Dataset aus = load_fixture("australian", kData);
        std::set<std::vector<bool>> seen;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const MaskedDataset m = mask_labels(aus, 0.01, seed);
            CHECK(m.revealed.labeled_count() == 7);
            CHECK(mask_labels(aus, 0.01, seed).mask == m.mask);
            seen.insert(m.mask);
        }
        CHECK(seen.size() == 10);
    }
}
