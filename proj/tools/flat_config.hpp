#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace rtctl::tools {

using FlatConfig = std::vector<std::pair<std::string, std::string>>;

/// Parses `key = value` lines. Blank lines and lines starting with '#' or ';'
/// are skipped; surrounding whitespace and a leading "--" on keys are
/// stripped. Throws ConfigError with the line number on malformed input.
FlatConfig parse_flat_config(std::istream& in);

/// Throws ConfigError if the file cannot be read.
FlatConfig read_flat_config(const std::filesystem::path& path);

/// Converts entries to "--key value" argument pairs.
std::vector<std::string> to_arguments(const FlatConfig& config);

/// Expands every "--config <path>" (or "--config=<path>") in args in place,
/// so that settings from the file precede any flag given after it.
std::vector<std::string> expand_config_arguments(const std::vector<std::string>& args);

}  // namespace rtctl::tools
