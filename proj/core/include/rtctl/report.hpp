#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "rtctl/experiment.hpp"

namespace rtctl::harness {

inline constexpr std::string_view kCsvHeader =
    "k,window_end_sec,applied_max_requests,mean_response_sec,n_observed,error_sec";

/// Resolved configuration as '#'-prefixed comment lines, then the column
/// header, then one row per sample. Reals use fixed decimals so output is
/// byte-stable for a given report.
void write_csv(const RunReport& report, std::ostream& out);

/// write_csv to a file. Throws std::runtime_error naming the path on I/O failure.
void emit_csv(const RunReport& report, const std::filesystem::path& path);

/// Two stacked panels, max_requests and response time against interval index.
void write_svg(const RunReport& report, std::ostream& out);
void emit_svg(const RunReport& report, const std::filesystem::path& path);

/// Human-readable summary table for a comparison.
void write_comparison(const ComparisonReport& report, std::ostream& out);

}  // namespace rtctl::harness
