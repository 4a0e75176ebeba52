#include "skpca/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

#include "skpca/error.hpp"

namespace skpca {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const ConfigEntry& e, const std::string& expected) {
    fail(ErrorCode::ConfigError,
         e.origin + ": " + key + " = '" + e.value + "' is not " + expected);
}

double to_double(const std::string& key, const ConfigEntry& e, const std::string& text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) bad_value(key, e, "a number");
    return v;
}

std::uint64_t to_unsigned(const std::string& key, const ConfigEntry& e, const std::string& text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        bad_value(key, e, "a non-negative integer");
    return v;
}

bool to_bool(const std::string& key, const ConfigEntry& e) {
    if (e.value == "true" || e.value == "1" || e.value == "yes" || e.value == "on") return true;
    if (e.value == "false" || e.value == "0" || e.value == "no" || e.value == "off") return false;
    bad_value(key, e, "a boolean");
}

template <typename T, typename Convert>
std::vector<T> to_list(const std::string& key, const ConfigEntry& e, Convert convert) {
    std::vector<T> out;
    for (const std::string& item : split_list(e.value)) out.push_back(convert(key, e, item));
    if (out.empty()) bad_value(key, e, "a non-empty list");
    return out;
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys{
        "datasets", "fractions", "reps", "models", "gamma-policy", "k", "seed", "threads", "out",
        "data-dir", "dataset", "fraction", "grid-size", "standardize", "synth-seed", "seeds", "verbose",
    };
    return keys;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item = trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

ConfigMap parse_config(std::istream& in, const std::string& source) {
    ConfigMap out;
    const auto& keys = known_config_keys();
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string origin = source + ":" + std::to_string(number);
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::ConfigError, origin + ": expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '_', '-');
        if (key.empty()) fail(ErrorCode::ConfigError, origin + ": missing key before '='");
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            fail(ErrorCode::ConfigError, origin + ": unknown key '" + key + "'");
        if (const auto it = out.find(key); it != out.end())
            fail(ErrorCode::ConfigError, origin + ": key '" + key + "' already set at " + it->second.origin);
        out[key] = ConfigEntry{trim(line.substr(eq + 1)), origin};
    }
    return out;
}

ConfigMap load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ConfigError, "cannot open config file " + path.string());
    return parse_config(in, path.string());
}

void overlay(ConfigMap& base, const ConfigMap& overrides) {
    for (const auto& [key, entry] : overrides) base[key] = entry;
}

CliSettings settings_from(const ConfigMap& config, const std::filesystem::path& data_dir) {
    CliSettings s;
    s.experiment.data_dir = data_dir;
    s.experiment.datasets = {"australian", "breastcancer", "diabetes", "heart", "iris",
                             "monk-2",     "pima",         "sonar",    "synth"};
    std::vector<std::size_t> ks;
    bool have_ks = false;

    for (const auto& [key, e] : config) {
        if (key == "datasets") {
            s.experiment.datasets = split_list(e.value);
            if (s.experiment.datasets.empty()) bad_value(key, e, "a non-empty list");
        } else if (key == "fractions") {
            s.experiment.fractions = to_list<double>(key, e, to_double);
        } else if (key == "reps") {
            s.experiment.repetitions = to_unsigned(key, e, e.value);
        } else if (key == "models") {
            s.experiment.models.clear();
            for (const std::string& m : split_list(e.value)) {
                try {
                    s.experiment.models.push_back(ModelSpec::parse(m));
                } catch (const Error& err) {
                    fail(ErrorCode::ConfigError, e.origin + ": " + err.what());
                }
            }
            if (s.experiment.models.empty()) bad_value(key, e, "a non-empty list");
        } else if (key == "gamma-policy") {
            s.experiment.policies.clear();
            for (const std::string& p : split_list(e.value)) {
                if (p == "both") {
                    s.experiment.policies = {PolicyKind::Best, PolicyKind::Fixed};
                    continue;
                }
                if (p != "best" && p != "fixed") bad_value(key, e, "best, fixed or both");
                s.experiment.policies.push_back(parse_policy(p));
            }
            if (s.experiment.policies.empty()) bad_value(key, e, "a non-empty list");
        } else if (key == "k") {
            ks = to_list<std::size_t>(key, e, to_unsigned);
            have_ks = true;
        } else if (key == "seed") {
            s.experiment.base_seed = to_unsigned(key, e, e.value);
        } else if (key == "threads") {
            s.experiment.threads = to_unsigned(key, e, e.value);
        } else if (key == "out") {
            s.out = e.value;
        } else if (key == "data-dir") {
            s.experiment.data_dir = e.value;
        } else if (key == "dataset") {
            s.sweep.dataset = e.value;
        } else if (key == "fraction") {
            s.sweep.fraction = to_double(key, e, e.value);
            if (!(s.sweep.fraction > 0.0 && s.sweep.fraction <= 1.0)) bad_value(key, e, "in (0, 1]");
        } else if (key == "grid-size") {
            s.experiment.grid_size = to_unsigned(key, e, e.value);
            if (s.experiment.grid_size < 1) bad_value(key, e, "at least 1");
        } else if (key == "standardize") {
            s.experiment.standardize = to_bool(key, e);
        } else if (key == "synth-seed") {
            s.experiment.synth_seed = to_unsigned(key, e, e.value);
        } else if (key == "seeds") {
            s.check_seeds = to_unsigned(key, e, e.value);
            if (s.check_seeds < 1) bad_value(key, e, "at least 1");
        } else if (key == "verbose") {
            s.verbose = to_bool(key, e);
        } else {
            fail(ErrorCode::ConfigError, e.origin + ": unknown key '" + key + "'");
        }
    }

    if (have_ks) {
        // --k replaces the Semi-KPCA entries, keeping their place in the list.
        std::vector<ModelSpec> models;
        bool inserted = false;
        auto insert_ks = [&] {
            for (std::size_t k : ks) models.push_back({ModelKind::SemiKpca, k});
            inserted = true;
        };
        for (const ModelSpec& m : s.experiment.models) {
            if (m.kind != ModelKind::SemiKpca) {
                models.push_back(m);
            } else if (!inserted) {
                insert_ks();
            }
        }
        if (!inserted) insert_ks();
        s.experiment.models = std::move(models);
    }
    if (s.experiment.repetitions < 1) bad_value("reps", config.at("reps"), "at least 1");

    s.sweep.models = s.experiment.models;
    s.sweep.grid_size = s.experiment.grid_size;
    s.sweep.repetitions = s.experiment.repetitions;
    s.sweep.base_seed = s.experiment.base_seed;
    s.sweep.data_dir = s.experiment.data_dir;
    s.sweep.standardize = s.experiment.standardize;
    s.sweep.threads = s.experiment.threads;
    s.sweep.synth_seed = s.experiment.synth_seed;
    return s;
}

}  // namespace skpca
