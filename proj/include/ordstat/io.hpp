#pragma once

#include "ordstat/harness.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ordstat::io {

/// Column order of the sweep CSV.
inline constexpr std::string_view kRecordColumns[] = {
    "family",  "estimator",     "n",            "mc_runs",  "seed",    "beta",    "alpha",
    "sigma",   "true_x",        "analytic_bias", "analytic_mse", "emp_bias", "emp_var", "emp_mse"};

inline constexpr std::string_view kMissing = "NA";

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double value);
std::string format_optional(const std::optional<double> &value);

std::string record_csv_header();
std::string record_to_csv(const PerfRecord &rec);
/// Inverse of record_to_csv. Throws Error{InvalidArgument} on malformed rows.
PerfRecord record_from_csv(std::string_view line);

void write_records_csv(std::ostream &out, const std::vector<PerfRecord> &records);
/// Reads a header line followed by rows.
std::vector<PerfRecord> read_records_csv(std::istream &in);

void write_records_json(std::ostream &out, const std::vector<PerfRecord> &records);

/// Newline-separated decimal floats; blank lines and lines starting with
/// '#' are skipped. Throws Error{InvalidArgument} naming the bad line.
std::vector<double> read_samples(std::istream &in);

} // namespace ordstat::io
