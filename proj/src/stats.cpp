#include "statbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "statbench/distributions.hpp"
#include "statbench/errors.hpp"
#include "statbench/numfmt.hpp"

namespace statbench::stats {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mean_of(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Sample variance with the n - 1 denominator, two-pass.
double variance_of(std::span<const double> xs, double mean) {
  double ss = 0;
  for (double v : xs) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(xs.size() - 1);
}

std::vector<double> finite_values(std::span<const double> xs, const char* what) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double v : xs) {
    if (std::isfinite(v)) out.push_back(v);
  }
  if (out.empty()) throw DomainError(std::string(what) + " has no non-missing values");
  return out;
}

double p_from_t(double t, double df, Alternative alt) {
  switch (alt) {
    case Alternative::TwoSided: return std::min(1.0, 2 * dist::t_cdf(-std::fabs(t), df));
    case Alternative::Greater: return dist::t_cdf(-t, df);
    case Alternative::Less: return dist::t_cdf(t, df);
  }
  return 1;
}

}  // namespace

std::string_view to_string(Alternative alt) {
  switch (alt) {
    case Alternative::TwoSided: return "two.sided";
    case Alternative::Greater: return "greater";
    case Alternative::Less: return "less";
  }
  return "?";
}

std::optional<Alternative> alternative_from_string(std::string_view name) {
  for (auto alt : {Alternative::TwoSided, Alternative::Greater, Alternative::Less}) {
    if (to_string(alt) == name) return alt;
  }
  return std::nullopt;
}

void HypothesisSpec::validate() const {
  if (!(conf_level > 0 && conf_level < 1)) {
    throw DomainError("conf_level must be strictly between 0 and 1, got " + format_number(conf_level));
  }
  if (!std::isfinite(mu)) throw DomainError("mu must be finite");
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DomainError("quantile of an empty sample");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

NumericSummary numeric_summary(std::span<const double> values) {
  if (values.empty()) throw DomainError("summary needs at least one non-missing value");
  std::vector<double> xs(values.begin(), values.end());
  NumericSummary s;
  s.n = xs.size();
  s.mean = mean_of(xs);
  if (xs.size() >= 2) s.sd = std::sqrt(variance_of(xs, s.mean));
  std::sort(xs.begin(), xs.end());
  s.min = xs.front();
  s.max = xs.back();
  s.q1 = quantile_sorted(xs, 0.25);
  s.median = quantile_sorted(xs, 0.5);
  s.q3 = quantile_sorted(xs, 0.75);
  return s;
}

NumericSummary numeric_summary(std::span<const CellValue> values) {
  std::vector<double> xs;
  std::size_t missing = 0;
  for (const auto& c : values) {
    if (c.is_missing()) {
      ++missing;
    } else if (c.is_number()) {
      xs.push_back(c.number());
    } else {
      throw TypeError("numeric summary requires numeric values");
    }
  }
  if (xs.empty()) throw DomainError("summary needs at least one non-missing value");
  auto s = numeric_summary(std::span<const double>(xs));
  s.n_missing = missing;
  return s;
}

RegressionFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("x and y must have equal lengths");
  const std::size_t n = x.size();
  if (n < 3) throw DomainError("regression needs at least 3 complete pairs, got " + std::to_string(n));
  const double xbar = mean_of(x), ybar = mean_of(y);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - xbar, dy = y[i] - ybar;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0)) throw DomainError("regression is singular: x is constant");

  RegressionFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  fit.residuals.resize(n);
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals[i] = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += fit.residuals[i] * fit.residuals[i];
  }
  fit.r_squared = syy > 0 ? std::clamp(1 - sse / syy, 0.0, 1.0) : 0.0;
  const double sigma2 = sse / static_cast<double>(n - 2);
  fit.slope_se = std::sqrt(sigma2 / sxx);
  fit.intercept_se = std::sqrt(sigma2 * (1.0 / static_cast<double>(n) + xbar * xbar / sxx));
  if (fit.slope_se > 0) {
    fit.t_slope = fit.slope / fit.slope_se;
    fit.p_slope = p_from_t(fit.t_slope, static_cast<double>(n - 2), Alternative::TwoSided);
  } else if (fit.slope != 0) {
    fit.t_slope = std::copysign(kInf, fit.slope);
    fit.p_slope = 0;
  } else {
    fit.t_slope = 0;
    fit.p_slope = 1;
  }
  return fit;
}

RegressionFit ols_fit(std::span<const CellValue> x, std::span<const CellValue> y) {
  if (x.size() != y.size()) throw DomainError("x and y must have equal lengths");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_missing() || y[i].is_missing()) continue;
    if (!x[i].is_number() || !y[i].is_number()) throw TypeError("regression requires numeric values");
    xs.push_back(x[i].number());
    ys.push_back(y[i].number());
  }
  return ols_fit(std::span<const double>(xs), std::span<const double>(ys));
}

TTestResult t_test(std::span<const double> x_in, std::span<const double> y_in,
                   const HypothesisSpec& spec) {
  spec.validate();
  TTestResult r;
  r.spec = spec;
  auto x = finite_values(x_in, "x");
  if (x.size() < 2) throw DomainError("t test needs at least 2 values in x");
  const double xbar = mean_of(x);
  const double vx = variance_of(x, xbar);
  const double nx = static_cast<double>(x.size());
  double se2 = 0;
  if (y_in.empty()) {
    se2 = vx / nx;
    r.df = nx - 1;
    r.estimate = xbar;
  } else {
    auto y = finite_values(y_in, "y");
    if (y.size() < 2) throw DomainError("t test needs at least 2 values in y");
    const double ybar = mean_of(y);
    const double vy = variance_of(y, ybar);
    const double ny = static_cast<double>(y.size());
    const double ax = vx / nx, ay = vy / ny;
    se2 = ax + ay;
    r.df = se2 * se2 / (ax * ax / (nx - 1) + ay * ay / (ny - 1));
    r.estimate = xbar - ybar;
    r.two_sample = true;
  }
  if (!(se2 > 0)) throw DomainError("degenerate variance: all values are identical");
  const double se = std::sqrt(se2);
  r.statistic = (r.estimate - spec.mu) / se;
  r.p_value = p_from_t(r.statistic, r.df, spec.alternative);
  switch (spec.alternative) {
    case Alternative::TwoSided: {
      const double q = dist::t_quantile(1 - (1 - spec.conf_level) / 2, r.df);
      r.ci_low = r.estimate - q * se;
      r.ci_high = r.estimate + q * se;
      break;
    }
    case Alternative::Greater:
      r.ci_low = r.estimate - dist::t_quantile(spec.conf_level, r.df) * se;
      r.ci_high = kInf;
      break;
    case Alternative::Less:
      r.ci_low = -kInf;
      r.ci_high = r.estimate + dist::t_quantile(spec.conf_level, r.df) * se;
      break;
  }
  return r;
}

std::vector<double> rank_sum_counts(std::size_t n, std::size_t m) {
  // f[i][j][u]: assignments of sizes (i, j) with statistic u. The largest pooled value
  // either belongs to x (beating all j values of y) or to y.
  std::vector<std::vector<std::vector<double>>> f(n + 1, std::vector<std::vector<double>>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      auto& cur = f[i][j];
      cur.assign(i * j + 1, 0.0);
      if (i == 0 || j == 0) {
        cur[0] = 1;
        continue;
      }
      const auto& with_x = f[i - 1][j];
      for (std::size_t u = 0; u < with_x.size(); ++u) cur[u + j] += with_x[u];
      const auto& with_y = f[i][j - 1];
      for (std::size_t u = 0; u < with_y.size(); ++u) cur[u] += with_y[u];
    }
  }
  return f[n][m];
}

WilcoxonResult wilcoxon_rank_sum(std::span<const double> x_in, std::span<const double> y_in,
                                 const HypothesisSpec& spec) {
  spec.validate();
  if (x_in.empty() || y_in.empty()) throw DomainError("wilcoxon rank sum test needs two non-empty samples");
  auto x = finite_values(x_in, "x");
  auto y = finite_values(y_in, "y");
  for (auto& v : y) v += spec.mu;

  const std::size_t n = x.size(), m = y.size(), total = n + m;
  std::vector<std::pair<double, bool>> pooled;
  pooled.reserve(total);
  for (double v : x) pooled.emplace_back(v, true);
  for (double v : y) pooled.emplace_back(v, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double rank_sum_x = 0, tie_term = 0;
  bool ties = false;
  for (std::size_t i = 0; i < total;) {
    std::size_t j = i;
    while (j + 1 < total && pooled[j + 1].first == pooled[i].first) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2;
    const double t = static_cast<double>(j - i + 1);
    if (t > 1) {
      ties = true;
      tie_term += t * t * t - t;
    }
    for (std::size_t k = i; k <= j; ++k) {
      if (pooled[k].second) rank_sum_x += midrank;
    }
    i = j + 1;
  }

  WilcoxonResult r;
  r.spec = spec;
  r.n_x = n;
  r.n_y = m;
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  r.w_statistic = rank_sum_x - dn * (dn + 1) / 2;
  r.exact = total <= 20 && !ties;

  if (r.exact) {
    const auto counts = rank_sum_counts(n, m);
    const auto w = static_cast<std::size_t>(std::llround(r.w_statistic));
    double all = 0, le = 0, ge = 0;
    for (std::size_t u = 0; u < counts.size(); ++u) {
      all += counts[u];
      if (u <= w) le += counts[u];
      if (u >= w) ge += counts[u];
    }
    const double p_le = le / all, p_ge = ge / all;
    switch (spec.alternative) {
      case Alternative::TwoSided: r.p_value = std::min(1.0, 2 * std::min(p_le, p_ge)); break;
      case Alternative::Greater: r.p_value = p_ge; break;
      case Alternative::Less: r.p_value = p_le; break;
    }
    return r;
  }

  const double dt = static_cast<double>(total);
  const double var = dn * dm / 12 * ((dt + 1) - tie_term / (dt * (dt - 1)));
  if (!(var > 0)) {
    r.p_value = 1;
    return r;
  }
  const double sigma = std::sqrt(var);
  const double centered = r.w_statistic - dn * dm / 2;
  double correction = 0;
  switch (spec.alternative) {
    case Alternative::TwoSided: correction = centered > 0 ? 0.5 : (centered < 0 ? -0.5 : 0); break;
    case Alternative::Greater: correction = 0.5; break;
    case Alternative::Less: correction = -0.5; break;
  }
  const double z = (centered - correction) / sigma;
  switch (spec.alternative) {
    case Alternative::TwoSided:
      r.p_value = std::min(1.0, 2 * std::min(dist::normal_cdf(z), dist::normal_cdf(-z)));
      break;
    case Alternative::Greater: r.p_value = dist::normal_cdf(-z); break;
    case Alternative::Less: r.p_value = dist::normal_cdf(z); break;
  }
  return r;
}

ContingencyResult contingency_from_table(std::vector<std::string> row_levels,
                                         std::vector<std::string> col_levels,
                                         std::vector<std::vector<long long>> observed) {
  const std::size_t rows = row_levels.size(), cols = col_levels.size();
  if (rows < 2) throw DomainError("contingency table needs at least 2 levels in the first variable");
  if (cols < 2) throw DomainError("contingency table needs at least 2 levels in the second variable");
  if (observed.size() != rows) throw DomainError("observed table has the wrong number of rows");
  std::vector<double> row_total(rows, 0), col_total(cols, 0);
  double grand = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (observed[i].size() != cols) throw DomainError("observed table has the wrong number of columns");
    for (std::size_t j = 0; j < cols; ++j) {
      if (observed[i][j] < 0) throw DomainError("negative count in contingency table");
      const auto c = static_cast<double>(observed[i][j]);
      row_total[i] += c;
      col_total[j] += c;
      grand += c;
    }
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_total[i] == 0) throw DomainError("row '" + row_levels[i] + "' has a zero total");
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (col_total[j] == 0) throw DomainError("column '" + col_levels[j] + "' has a zero total");
  }

  ContingencyResult r;
  r.expected.assign(rows, std::vector<double>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double e = row_total[i] * col_total[j] / grand;
      r.expected[i][j] = e;
      const double d = static_cast<double>(observed[i][j]) - e;
      r.chi_square += d * d / e;
    }
  }
  r.df = static_cast<double>((rows - 1) * (cols - 1));
  r.p_value = dist::chisq_sf(r.chi_square, r.df);
  r.row_levels = std::move(row_levels);
  r.col_levels = std::move(col_levels);
  r.observed = std::move(observed);
  return r;
}

ContingencyResult contingency(std::span<const CellValue> a, std::span<const CellValue> b) {
  if (a.size() != b.size()) throw DomainError("variables must have equal lengths");
  std::map<std::pair<std::string, std::string>, long long> counts;
  std::set<std::string> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_missing() || b[i].is_missing()) continue;
    if (!a[i].is_label() || !b[i].is_label()) throw TypeError("contingency table requires categorical values");
    rows.insert(a[i].label());
    cols.insert(b[i].label());
    ++counts[{a[i].label(), b[i].label()}];
  }
  std::vector<std::string> row_levels(rows.begin(), rows.end()), col_levels(cols.begin(), cols.end());
  std::vector<std::vector<long long>> observed(row_levels.size(), std::vector<long long>(col_levels.size(), 0));
  for (std::size_t i = 0; i < row_levels.size(); ++i) {
    for (std::size_t j = 0; j < col_levels.size(); ++j) {
      auto it = counts.find({row_levels[i], col_levels[j]});
      if (it != counts.end()) observed[i][j] = it->second;
    }
  }
  return contingency_from_table(std::move(row_levels), std::move(col_levels), std::move(observed));
}

}  // namespace statbench::stats
