#include <sstream>

#include <doctest.h>

#include "helpers.hpp"
#include "skpca/config.hpp"

using namespace skpca;

namespace {

ConfigMap parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in, "test.conf");
}

std::string config_error(const std::string& text) {
    try {
        settings_from(parse(text), "data");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConfigError);
        return e.what();
    }
    FAIL("expected a ConfigError");
    return {};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("parse_config") {
    const ConfigMap m = parse("# experiment\n\ndatasets = synth, iris  # two\nreps=3\ngrid_size = 5\n");
    REQUIRE(m.size() == 3);
    CHECK(m.at("datasets").value == "synth, iris");
    CHECK(m.at("datasets").origin == "test.conf:3");
    CHECK(m.at("reps").value == "3");
    CHECK(m.at("grid-size").value == "5");
}

TEST_CASE("parse errors name the line and key") {
    CHECK(contains(config_error("reps = 3\nthis line is wrong\n"), "test.conf:2"));
    CHECK(contains(config_error("reps = 3\ncolour = red\n"), "unknown key 'colour'"));
    CHECK(contains(config_error("reps = 3\ncolour = red\n"), "test.conf:2"));
    const std::string dup = config_error("reps = 3\nreps = 4\n");
    CHECK(contains(dup, "test.conf:2"));
    CHECK(contains(dup, "already set at test.conf:1"));
    CHECK(contains(config_error(" = 4\n"), "missing key"));
}

TEST_CASE("bad values name the key and where it was set") {
    const std::string reps = config_error("\nreps = many\n");
    CHECK(contains(reps, "test.conf:2"));
    CHECK(contains(reps, "reps"));
    CHECK(contains(config_error("reps = 0\n"), "at least 1"));
    CHECK(contains(config_error("reps = -1\n"), "non-negative integer"));
    CHECK(contains(config_error("fractions = 0.01, x\n"), "a number"));
    CHECK(contains(config_error("fractions = ,\n"), "non-empty"));
    CHECK(contains(config_error("models = skpca-k1, svm\n"), "svm"));
    CHECK(contains(config_error("gamma-policy = worst\n"), "best, fixed or both"));
    CHECK(contains(config_error("standardize = maybe\n"), "boolean"));
    CHECK(contains(config_error("fraction = 1.5\n"), "(0, 1]"));
    CHECK(contains(config_error("grid-size = 0\n"), "at least 1"));
    CHECK(contains(config_error("seeds = 0\n"), "at least 1"));
}

TEST_CASE("settings defaults") {
    const CliSettings s = settings_from({}, "fixtures");
    CHECK(s.experiment.datasets.size() == 9);
    CHECK(s.experiment.fractions == std::vector<double>{0.01, 0.02, 0.05, 0.10});
    CHECK(s.experiment.repetitions == 10);
    CHECK(s.experiment.models.size() == 4);
    CHECK(s.experiment.policies.size() == 2);
    CHECK(s.experiment.grid_size == 40);
    CHECK(s.experiment.standardize);
    CHECK(s.experiment.data_dir == "fixtures");
    CHECK(s.out == "results");
    CHECK(s.check_seeds == 20);
}

TEST_CASE("settings from a config") {
    const CliSettings s = settings_from(parse("datasets = heart\nfractions = 0.05\nreps = 2\nseed = 7\n"
                                              "gamma-policy = fixed\nmodels = semi-lssvm, skpca-k1\n"
                                              "threads = 1\nout = here\ndata-dir = there\nstandardize = off\n"
                                              "dataset = iris\nfraction = 0.02\ngrid-size = 6\n"),
                                        "ignored");
    CHECK(s.experiment.datasets == std::vector<std::string>{"heart"});
    CHECK(s.experiment.fractions == std::vector<double>{0.05});
    CHECK(s.experiment.repetitions == 2);
    CHECK(s.experiment.base_seed == 7);
    CHECK(s.experiment.policies == std::vector<PolicyKind>{PolicyKind::Fixed});
    CHECK(s.experiment.models ==
          std::vector<ModelSpec>{{ModelKind::SemiLssvm, 0}, {ModelKind::SemiKpca, 1}});
    CHECK(s.experiment.threads == 1);
    CHECK(s.out == "here");
    CHECK(s.experiment.data_dir == "there");
    CHECK_FALSE(s.experiment.standardize);
    CHECK(s.sweep.dataset == "iris");
    CHECK(s.sweep.fraction == 0.02);
    CHECK(s.sweep.grid_size == 6);
    CHECK(s.sweep.repetitions == 2);
    CHECK(s.sweep.base_seed == 7);
    CHECK(s.sweep.models == s.experiment.models);
    CHECK(s.sweep.data_dir == "there");
    CHECK_FALSE(s.sweep.standardize);

    CHECK(settings_from(parse("gamma-policy = both\n"), "d").experiment.policies.size() == 2);
}

TEST_CASE("k replaces the Semi-KPCA models in place") {
    const CliSettings a = settings_from(parse("k = 2\n"), "d");
    CHECK(a.experiment.models == std::vector<ModelSpec>{{ModelKind::SemiKpca, 2},
                                                        {ModelKind::SemiLssvm, 0},
                                                        {ModelKind::SubsLssvm, 0}});
    const CliSettings b = settings_from(parse("models = subs-lssvm\nk = 0, 1\n"), "d");
    CHECK(b.experiment.models == std::vector<ModelSpec>{{ModelKind::SubsLssvm, 0},
                                                        {ModelKind::SemiKpca, 0},
                                                        {ModelKind::SemiKpca, 1}});
}

TEST_CASE("flags overlay the config file") {
    ConfigMap file = parse("reps = 3\nseed = 1\n");
    ConfigMap flags{{"reps", {"5", "--reps"}}};
    overlay(file, flags);
    const CliSettings s = settings_from(file, "d");
    CHECK(s.experiment.repetitions == 5);
    CHECK(s.experiment.base_seed == 1);

    ConfigMap bad{{"reps", {"x", "--reps"}}};
    overlay(file, bad);
    try {
        settings_from(file, "d");
        FAIL("expected a ConfigError");
    } catch (const Error& e) {
        CHECK(contains(e.what(), "--reps"));
    }
}

TEST_CASE("split_list") {
    CHECK(split_list("a, b ,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_list("").empty());
    CHECK(split_list(" , a,,") == std::vector<std::string>{"a"});
}

TEST_CASE("load_config") {
    CHECK(code_of([] { load_config("/nonexistent/skpca.conf"); }) == ErrorCode::ConfigError);
}
