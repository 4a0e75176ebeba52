#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "skpca/harness.hpp"

namespace skpca {

// Plain `key = value` files. '#' starts a comment, blank lines are ignored,
// keys use dashes (underscores are accepted and normalised). Lists are comma
// separated.

struct ConfigEntry {
    std::string value;
    std::string origin;  // "file:line" or "--flag"
};

using ConfigMap = std::map<std::string, ConfigEntry>;

/// Every key a config file or flag may set.
const std::vector<std::string>& known_config_keys();

/// Throws ConfigError naming the source line for malformed lines, unknown and
/// repeated keys.
ConfigMap parse_config(std::istream& in, const std::string& source);
ConfigMap load_config(const std::filesystem::path& path);

/// Entries of `overrides` replace those of `base`.
void overlay(ConfigMap& base, const ConfigMap& overrides);

struct CliSettings {
    ExperimentConfig experiment;
    SweepConfig sweep;
    std::filesystem::path out = "results";
    std::size_t check_seeds = 20;
    bool verbose = false;
};

/// Applies every entry of `config` to the defaults; `data_dir` seeds the
/// data directory when the config does not name one. Throws ConfigError with
/// the entry's origin on bad values.
CliSettings settings_from(const ConfigMap& config, const std::filesystem::path& data_dir);

std::vector<std::string> split_list(const std::string& text);

}  // namespace skpca
