#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "statbench/dataset.hpp"
#include "statbench/plot.hpp"
#include "statbench/stats.hpp"

namespace statbench {

struct ColumnInfo {
  std::string name;
  ColumnType type;
  std::size_t n_missing = 0;
  bool operator==(const ColumnInfo&) const = default;
};

/// Shape of the active dataset, returned by data commands and uploads.
struct DataSummary {
  std::vector<ColumnInfo> columns;
  std::size_t n_rows = 0;
  bool operator==(const DataSummary&) const = default;
};

DataSummary summarize(const Dataset& ds);

using Result = std::variant<DataSummary, stats::NumericSummary, stats::RegressionFit, stats::TTestResult,
                            stats::WilcoxonResult, stats::ContingencyResult, plot::PlotSpec>;

/// Wire form: {"type": ..., ...fields}. Non-finite floats become "Infinity", "-Infinity" or "NaN".
nlohmann::json to_json(const Result& result);
nlohmann::json to_json(const plot::PlotSpec& spec);
nlohmann::json to_json(const DataSummary& summary);

/// Plain-text rendering shown in result panels and reports.
std::string format_text(const Result& result);

bool is_plot(const Result& result);

/// Structural comparison of two JSON payloads: strings, integers, booleans
/// and shapes must match exactly; floats within rel_tol relative error.
/// On mismatch, *where receives a JSON-pointer-like path.
bool json_close(const nlohmann::json& a, const nlohmann::json& b, double rel_tol, std::string* where = nullptr);

}  // namespace statbench
