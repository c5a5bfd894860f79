#pragma once

// Run configuration, check records and their CSV / JSON rendering.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "reflectionless/params.hpp"

namespace reflectionless {

enum class OutputFormat { csv, json };

struct RunConfig {
  double kappa = 1.0;
  double tolerance = 1e-6;
  double grid_l = 20.0;
  int grid_n = 2000;
  double k_max = 40.0;
  int k_points = 2001;
  OutputFormat format = OutputFormat::csv;
  std::string out_path;  // empty: standard output
  std::uint64_t seed = 42;

  void validate() const {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    if (!(tolerance > 0.0)) throw std::invalid_argument("tol must be positive");
    if (!(grid_l > 0.0)) throw std::invalid_argument("grid-l must be positive");
    if (grid_n < 3) throw std::invalid_argument("grid-n must be at least 3");
    if (!(k_max > 0.0)) throw std::invalid_argument("k-max must be positive");
    if (k_points < 20) throw std::invalid_argument("k-points must be at least 20");
  }

  PotentialParams params() const {
    PotentialParams p;
    p.kappa = kappa;
    p.tol = std::min(tolerance, 1e-4);
    p.validate();
    return p;
  }
};

/// Fixed 17-significant-digit rendering, independent of locale.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using Scalar = std::variant<double, cplx>;

inline std::string format_scalar(const Scalar& s) {
  if (const double* d = std::get_if<double>(&s)) return format_number(*d);
  const cplx c = std::get<cplx>(s);
  return format_number(c.real()) + (std::signbit(c.imag()) ? "-" : "+") + format_number(std::abs(c.imag())) + "i";
}

struct ReportRecord {
  std::string check_name;
  Scalar expected;
  Scalar actual;
  double abs_error;
  double tolerance;
  bool passed;
};

/// Record comparing two values; passed iff abs_error <= tolerance.
inline ReportRecord make_record(std::string name, Scalar expected, Scalar actual, double tolerance) {
  auto as_c = [](const Scalar& s) { return std::visit([](auto v) { return cplx(v); }, s); };
  const double err = std::abs(as_c(actual) - as_c(expected));
  return {std::move(name), expected, actual, err, tolerance, err <= tolerance};
}

/// Record for a check that could not produce a value (e.g. quadrature
/// failure); never passes.
inline ReportRecord failed_record(std::string name, Scalar expected, Scalar best, double abs_error, double tolerance) {
  return {std::move(name), expected, best, abs_error, tolerance, false};
}

inline void sort_records(std::vector<ReportRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ReportRecord& a, const ReportRecord& b) { return a.check_name < b.check_name; });
}

inline bool all_passed(const std::vector<ReportRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const ReportRecord& r) { return r.passed; });
}

inline const char* format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

inline nlohmann::ordered_json config_json(const RunConfig& c) {
  return {{"kappa", c.kappa},   {"tol", c.tolerance},     {"grid_l", c.grid_l},
          {"grid_n", c.grid_n}, {"k_max", c.k_max},       {"k_points", c.k_points},
          {"format", format_name(c.format)}, {"out", c.out_path}, {"seed", c.seed}};
}

inline const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols{"check_name", "expected", "actual", "abs_error", "tolerance", "passed"};
  return cols;
}

inline void write_report(std::ostream& os, const RunConfig& cfg, const std::vector<ReportRecord>& records) {
  const auto n_passed = std::count_if(records.begin(), records.end(), [](const ReportRecord& r) { return r.passed; });
  if (cfg.format == OutputFormat::csv) {
    const auto& cols = report_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : records)
      os << r.check_name << ',' << format_scalar(r.expected) << ',' << format_scalar(r.actual) << ','
         << format_number(r.abs_error) << ',' << format_number(r.tolerance) << ',' << (r.passed ? "true" : "false")
         << '\n';
    return;
  }
  nlohmann::ordered_json doc;
  doc["config"] = config_json(cfg);
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records)
    doc["records"].push_back({{"check_name", r.check_name},
                              {"expected", format_scalar(r.expected)},
                              {"actual", format_scalar(r.actual)},
                              {"abs_error", format_number(r.abs_error)},
                              {"tolerance", format_number(r.tolerance)},
                              {"passed", r.passed}});
  doc["summary"] = {{"total", records.size()}, {"passed", n_passed}, {"failed", records.size() - n_passed},
                    {"all_passed", all_passed(records)}};
  os << doc.dump(2) << '\n';
}

/// Column-oriented numeric table (eval / extract output). A row may carry a
/// text label in the first column instead of a number.
struct DataTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(const std::vector<double>& values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_number(v));
    rows.push_back(std::move(row));
  }
};

inline void write_table(std::ostream& os, const RunConfig& cfg, const DataTable& t) {
  if (cfg.format == OutputFormat::csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["config"] = config_json(cfg);
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec;
    for (std::size_t i = 0; i < row.size(); ++i) rec[t.columns[i]] = row[i];
    doc["records"].push_back(std::move(rec));
  }
  doc["summary"] = {{"rows", t.rows.size()}, {"columns", t.columns}};
  os << doc.dump(2) << '\n';
}

}  // namespace reflectionless
