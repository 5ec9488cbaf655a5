#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "statbench/dataset.hpp"

namespace statbench::stats {

enum class Alternative { TwoSided, Greater, Less };

std::string_view to_string(Alternative alt);
/// Accepts "two.sided", "greater", "less".
std::optional<Alternative> alternative_from_string(std::string_view name);

struct HypothesisSpec {
  Alternative alternative = Alternative::TwoSided;
  double conf_level = 0.95;
  double mu = 0;

  /// Throws DomainError unless conf_level is strictly inside (0, 1) and mu is finite.
  void validate() const;
  bool operator==(const HypothesisSpec&) const = default;
};

struct NumericSummary {
  std::size_t n = 0;
  std::size_t n_missing = 0;
  double mean = 0;
  std::optional<double> sd;  // defined for n >= 2
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

struct RegressionFit {
  double slope = 0, intercept = 0;
  double slope_se = 0, intercept_se = 0;
  double t_slope = 0, p_slope = 1;
  double r_squared = 0;
  std::vector<double> residuals;
  std::size_t n = 0;
};

struct TTestResult {
  double statistic = 0, df = 0, p_value = 1;
  double estimate = 0;
  double ci_low = 0, ci_high = 0;  // +-infinity for one-sided bounds
  bool two_sample = false;
  HypothesisSpec spec;
};

struct WilcoxonResult {
  double w_statistic = 0;
  double p_value = 1;
  bool exact = false;
  std::size_t n_x = 0, n_y = 0;
  HypothesisSpec spec;
};

struct ContingencyResult {
  std::vector<std::string> row_levels, col_levels;
  std::vector<std::vector<long long>> observed;
  std::vector<std::vector<double>> expected;
  double chi_square = 0, df = 0, p_value = 1;
};

/// Type-7 quantile of sorted data.
double quantile_sorted(std::span<const double> sorted, double p);

NumericSummary numeric_summary(std::span<const CellValue> values);
NumericSummary numeric_summary(std::span<const double> values);

/// Pairwise deletion of missing cells is applied before fitting.
RegressionFit ols_fit(std::span<const CellValue> x, std::span<const CellValue> y);
RegressionFit ols_fit(std::span<const double> x, std::span<const double> y);

/// One-sample test when y is empty, otherwise Welch two-sample.
TTestResult t_test(std::span<const double> x, std::span<const double> y, const HypothesisSpec& spec);

WilcoxonResult wilcoxon_rank_sum(std::span<const double> x, std::span<const double> y,
                                 const HypothesisSpec& spec);

/// Exact null distribution of the rank-sum statistic W for sample sizes n, m without ties:
/// entry w holds the number of rank assignments giving W = w.
std::vector<double> rank_sum_counts(std::size_t n, std::size_t m);

ContingencyResult contingency(std::span<const CellValue> a, std::span<const CellValue> b);
ContingencyResult contingency_from_table(std::vector<std::string> row_levels,
                                         std::vector<std::string> col_levels,
                                         std::vector<std::vector<long long>> observed);

}  // namespace statbench::stats
