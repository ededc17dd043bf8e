#include "ordstat/io.hpp"

#include "ordstat/error.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace ordstat::io {
namespace {

constexpr std::size_t kColumnCount = std::size(kRecordColumns);

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void malformed(const std::string &what) {
  throw Error(ErrorCode::InvalidArgument, "malformed record: " + what);
}

double parse_double(std::string_view field, std::string_view column) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') {
    field.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    malformed("column '" + std::string(column) + "' is not a number: '" + std::string(field) +
              "'");
  }
  return value;
}

std::optional<double> parse_optional(std::string_view field, std::string_view column) {
  if (trim(field) == kMissing) {
    return std::nullopt;
  }
  return parse_double(field, column);
}

template <class Int> Int parse_int(std::string_view field, std::string_view column) {
  field = trim(field);
  Int value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    malformed("column '" + std::string(column) + "' is not an integer: '" + std::string(field) +
              "'");
  }
  return value;
}

nlohmann::json optional_json(const std::optional<double> &v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

} // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_optional(const std::optional<double> &value) {
  return value ? format_double(*value) : std::string(kMissing);
}

std::string record_csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kColumnCount; ++i) {
    if (i > 0) {
      out += ',';
    }
    out += kRecordColumns[i];
  }
  return out;
}

std::string record_to_csv(const PerfRecord &rec) {
  std::string out;
  out += to_string(rec.family);
  out += ',';
  out += to_string(rec.estimator);
  out += ',' + std::to_string(rec.n);
  out += ',' + std::to_string(rec.mc_runs);
  out += ',' + std::to_string(rec.seed);
  out += ',' + format_double(rec.beta);
  out += ',' + format_optional(rec.alpha);
  out += ',' + format_optional(rec.sigma);
  out += ',' + format_double(rec.true_x);
  out += ',' + format_optional(rec.analytic_bias);
  out += ',' + format_optional(rec.analytic_mse);
  out += ',' + format_double(rec.emp_bias);
  out += ',' + format_double(rec.emp_var);
  out += ',' + format_double(rec.emp_mse);
  return out;
}

PerfRecord record_from_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  if (fields.size() != kColumnCount) {
    malformed("expected " + std::to_string(kColumnCount) + " columns, got " +
              std::to_string(fields.size()));
  }
  PerfRecord rec{};
  const auto family = parse_family(trim(fields[0]));
  if (!family) {
    malformed("unknown family '" + std::string(fields[0]) + "'");
  }
  const auto estimator = parse_estimator(trim(fields[1]));
  if (!estimator) {
    malformed("unknown estimator '" + std::string(fields[1]) + "'");
  }
  rec.family = *family;
  rec.estimator = *estimator;
  rec.n = parse_int<std::size_t>(fields[2], kRecordColumns[2]);
  rec.mc_runs = parse_int<std::size_t>(fields[3], kRecordColumns[3]);
  rec.seed = parse_int<std::uint64_t>(fields[4], kRecordColumns[4]);
  rec.beta = parse_double(fields[5], kRecordColumns[5]);
  rec.alpha = parse_optional(fields[6], kRecordColumns[6]);
  rec.sigma = parse_optional(fields[7], kRecordColumns[7]);
  rec.true_x = parse_double(fields[8], kRecordColumns[8]);
  rec.analytic_bias = parse_optional(fields[9], kRecordColumns[9]);
  rec.analytic_mse = parse_optional(fields[10], kRecordColumns[10]);
  rec.emp_bias = parse_double(fields[11], kRecordColumns[11]);
  rec.emp_var = parse_double(fields[12], kRecordColumns[12]);
  rec.emp_mse = parse_double(fields[13], kRecordColumns[13]);
  return rec;
}

void write_records_csv(std::ostream &out, const std::vector<PerfRecord> &records) {
  out << record_csv_header() << '\n';
  for (const PerfRecord &rec : records) {
    out << record_to_csv(rec) << '\n';
  }
}

std::vector<PerfRecord> read_records_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != record_csv_header()) {
    malformed("missing or unexpected CSV header");
  }
  std::vector<PerfRecord> out;
  while (std::getline(in, line)) {
    if (trim(line).empty()) {
      continue;
    }
    out.push_back(record_from_csv(line));
  }
  return out;
}

void write_records_json(std::ostream &out, const std::vector<PerfRecord> &records) {
  nlohmann::json rows = nlohmann::json::array();
  for (const PerfRecord &rec : records) {
    rows.push_back({
        {"family", std::string(to_string(rec.family))},
        {"estimator", std::string(to_string(rec.estimator))},
        {"n", rec.n},
        {"mc_runs", rec.mc_runs},
        {"seed", rec.seed},
        {"beta", rec.beta},
        {"alpha", optional_json(rec.alpha)},
        {"sigma", optional_json(rec.sigma)},
        {"true_x", rec.true_x},
        {"analytic_bias", optional_json(rec.analytic_bias)},
        {"analytic_mse", optional_json(rec.analytic_mse)},
        {"emp_bias", rec.emp_bias},
        {"emp_var", rec.emp_var},
        {"emp_mse", rec.emp_mse},
    });
  }
  out << rows.dump(2) << '\n';
}

std::vector<double> read_samples(std::istream &in) {
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') {
      continue;
    }
    try {
      out.push_back(parse_double(body, "sample"));
    } catch (const Error &) {
      throw Error(ErrorCode::InvalidArgument,
                  "line " + std::to_string(line_no) + ": not a number: '" + std::string(body) + "'");
    }
  }
  return out;
}

} // namespace ordstat::io
