#include "statbench/results.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "statbench/numfmt.hpp"

namespace statbench {

using nlohmann::json;

namespace {

json num(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  return v;
}

json num_list(const std::vector<double>& xs) {
  json out = json::array();
  for (double v : xs) out.push_back(num(v));
  return out;
}

json spec_json(const stats::HypothesisSpec& s) {
  return {{"alternative", std::string(stats::to_string(s.alternative))},
          {"conf_level", num(s.conf_level)},
          {"mu", num(s.mu)}};
}

std::string d(double v, int digits = 7) { return format_display(v, digits); }

std::string alternative_text(const stats::HypothesisSpec& s, const char* what) {
  const std::string mu = d(s.mu);
  switch (s.alternative) {
    case stats::Alternative::TwoSided: return std::string("true ") + what + " is not equal to " + mu;
    case stats::Alternative::Greater: return std::string("true ") + what + " is greater than " + mu;
    case stats::Alternative::Less: return std::string("true ") + what + " is less than " + mu;
  }
  return "";
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

}  // namespace

DataSummary summarize(const Dataset& ds) {
  DataSummary s;
  s.n_rows = ds.n_rows();
  for (const auto& c : ds.columns()) {
    std::size_t missing = 0;
    for (const auto& cell : c.cells()) missing += cell.is_missing();
    s.columns.push_back({c.name(), c.type(), missing});
  }
  return s;
}

json to_json(const DataSummary& summary) {
  json cols = json::array();
  for (const auto& c : summary.columns) {
    cols.push_back({{"name", c.name}, {"type", std::string(to_string(c.type))}, {"n_missing", c.n_missing}});
  }
  return {{"type", "data_summary"}, {"n_rows", summary.n_rows}, {"columns", cols}};
}

json to_json(const plot::PlotSpec& spec) {
  json j = {{"type", "plot"},
            {"kind", std::string(plot::to_string(spec.kind))},
            {"x_label", spec.x_label},
            {"y_label", spec.y_label}};
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, plot::HistogramGeometry>) {
          j["breaks"] = num_list(g.breaks);
          j["counts"] = g.counts;
        } else if constexpr (std::is_same_v<G, plot::BarGeometry>) {
          j["levels"] = g.levels;
          j["counts"] = g.counts;
        } else if constexpr (std::is_same_v<G, plot::ScatterGeometry>) {
          json pts = json::array();
          for (const auto& [x, y] : g.points) pts.push_back({num(x), num(y)});
          j["points"] = pts;
        } else if constexpr (std::is_same_v<G, plot::BoxGeometry>) {
          json boxes = json::array();
          for (const auto& b : g.boxes) {
            boxes.push_back({{"group", b.group},
                             {"n", b.n},
                             {"whisker_low", num(b.whisker_low)},
                             {"q1", num(b.q1)},
                             {"median", num(b.median)},
                             {"q3", num(b.q3)},
                             {"whisker_high", num(b.whisker_high)},
                             {"outliers", num_list(b.outliers)}});
          }
          j["boxes"] = boxes;
        } else {
          json rects = json::array();
          for (const auto& r : g.rects) {
            rects.push_back({{"x_level", r.x_level},
                             {"y_level", r.y_level},
                             {"x0", num(r.x0)},
                             {"y0", num(r.y0)},
                             {"x1", num(r.x1)},
                             {"y1", num(r.y1)},
                             {"count", r.count}});
          }
          j["x_levels"] = g.x_levels;
          j["y_levels"] = g.y_levels;
          j["rects"] = rects;
        }
      },
      spec.geometry);
  return j;
}

json to_json(const Result& result) {
  return std::visit(
      [](const auto& r) -> json {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, DataSummary>) {
          return to_json(r);
        } else if constexpr (std::is_same_v<R, stats::NumericSummary>) {
          return {{"type", "numeric_summary"}, {"n", r.n},         {"n_missing", r.n_missing},
                  {"mean", num(r.mean)},       {"sd", r.sd ? num(*r.sd) : json(nullptr)},
                  {"min", num(r.min)},         {"q1", num(r.q1)},  {"median", num(r.median)},
                  {"q3", num(r.q3)},           {"max", num(r.max)}};
        } else if constexpr (std::is_same_v<R, stats::RegressionFit>) {
          return {{"type", "regression"},
                  {"n", r.n},
                  {"slope", num(r.slope)},
                  {"intercept", num(r.intercept)},
                  {"slope_se", num(r.slope_se)},
                  {"intercept_se", num(r.intercept_se)},
                  {"t_slope", num(r.t_slope)},
                  {"p_slope", num(r.p_slope)},
                  {"r_squared", num(r.r_squared)},
                  {"residuals", num_list(r.residuals)}};
        } else if constexpr (std::is_same_v<R, stats::TTestResult>) {
          return {{"type", "t_test"},
                  {"two_sample", r.two_sample},
                  {"statistic", num(r.statistic)},
                  {"df", num(r.df)},
                  {"p_value", num(r.p_value)},
                  {"estimate", num(r.estimate)},
                  {"ci_low", num(r.ci_low)},
                  {"ci_high", num(r.ci_high)},
                  {"spec", spec_json(r.spec)}};
        } else if constexpr (std::is_same_v<R, stats::WilcoxonResult>) {
          return {{"type", "wilcoxon_rank_sum"},
                  {"w_statistic", num(r.w_statistic)},
                  {"p_value", num(r.p_value)},
                  {"exact", r.exact},
                  {"n_x", r.n_x},
                  {"n_y", r.n_y},
                  {"spec", spec_json(r.spec)}};
        } else if constexpr (std::is_same_v<R, stats::ContingencyResult>) {
          json expected = json::array();
          for (const auto& row : r.expected) expected.push_back(num_list(row));
          return {{"type", "contingency"},
                  {"row_levels", r.row_levels},
                  {"col_levels", r.col_levels},
                  {"observed", r.observed},
                  {"expected", expected},
                  {"chi_square", num(r.chi_square)},
                  {"df", num(r.df)},
                  {"p_value", num(r.p_value)}};
        } else {
          return to_json(r);
        }
      },
      result);
}

bool is_plot(const Result& result) { return std::holds_alternative<plot::PlotSpec>(result); }

std::string format_text(const Result& result) {
  std::ostringstream os;
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, DataSummary>) {
          os << r.n_rows << " rows, " << r.columns.size() << " columns\n";
          std::size_t w = 4;
          for (const auto& c : r.columns) w = std::max(w, c.name.size());
          for (const auto& c : r.columns) {
            os << "  " << c.name << std::string(w - c.name.size() + 2, ' ') << to_string(c.type);
            if (c.n_missing) os << " (" << c.n_missing << " missing)";
            os << "\n";
          }
        } else if constexpr (std::is_same_v<R, stats::NumericSummary>) {
          const char* names[] = {"Min.", "1st Qu.", "Median", "Mean", "3rd Qu.", "Max.", "SD"};
          std::vector<std::string> vals = {d(r.min), d(r.q1), d(r.median), d(r.mean),
                                           d(r.q3),  d(r.max), r.sd ? d(*r.sd) : "NA"};
          for (std::size_t i = 0; i < vals.size(); ++i) {
            std::size_t w = std::max(vals[i].size(), std::strlen(names[i]));
            os << pad(names[i], w) << (i + 1 < vals.size() ? " " : "\n");
          }
          for (std::size_t i = 0; i < vals.size(); ++i) {
            std::size_t w = std::max(vals[i].size(), std::strlen(names[i]));
            os << pad(vals[i], w) << (i + 1 < vals.size() ? " " : "\n");
          }
          os << "n = " << r.n;
          if (r.n_missing) os << ", " << r.n_missing << " missing";
          os << "\n";
        } else if constexpr (std::is_same_v<R, stats::RegressionFit>) {
          os << "Simple linear regression (n = " << r.n << ")\n\n"
             << "Coefficients:\n"
             << "             Estimate  Std. Error\n"
             << "(Intercept) " << pad(d(r.intercept), 9) << "  " << pad(d(r.intercept_se), 10) << "\n"
             << "slope       " << pad(d(r.slope), 9) << "  " << pad(d(r.slope_se), 10) << "\n\n"
             << "t = " << d(r.t_slope) << ", df = " << (r.n - 2) << ", p-value = " << d(r.p_slope, 4) << "\n"
             << "R-squared: " << d(r.r_squared, 4) << "\n";
        } else if constexpr (std::is_same_v<R, stats::TTestResult>) {
          os << (r.two_sample ? "Welch Two Sample t-test" : "One Sample t-test") << "\n\n"
             << "t = " << d(r.statistic, 5) << ", df = " << d(r.df, 5) << ", p-value = " << d(r.p_value, 4) << "\n"
             << "alternative hypothesis: "
             << alternative_text(r.spec, r.two_sample ? "difference in means" : "mean") << "\n"
             << d(r.spec.conf_level * 100, 4) << " percent confidence interval:\n"
             << " " << d(r.ci_low) << " " << d(r.ci_high) << "\n"
             << "sample estimate" << (r.two_sample ? " (difference in means): " : " (mean of x): ")
             << d(r.estimate) << "\n";
        } else if constexpr (std::is_same_v<R, stats::WilcoxonResult>) {
          os << "Wilcoxon rank sum test" << (r.exact ? " (exact)" : " with continuity correction") << "\n\n"
             << "W = " << d(r.w_statistic) << ", p-value = " << d(r.p_value, 4) << "\n"
             << "alternative hypothesis: " << alternative_text(r.spec, "location shift") << "\n";
        } else if constexpr (std::is_same_v<R, stats::ContingencyResult>) {
          std::size_t w = 0;
          for (const auto& l : r.row_levels) w = std::max(w, l.size());
          std::vector<std::size_t> cw;
          for (std::size_t j = 0; j < r.col_levels.size(); ++j) {
            std::size_t c = r.col_levels[j].size();
            for (const auto& row : r.observed) c = std::max(c, std::to_string(row[j]).size());
            cw.push_back(c);
          }
          os << std::string(w, ' ');
          for (std::size_t j = 0; j < r.col_levels.size(); ++j) os << " " << pad(r.col_levels[j], cw[j]);
          os << "\n";
          for (std::size_t i = 0; i < r.row_levels.size(); ++i) {
            os << r.row_levels[i] << std::string(w - r.row_levels[i].size(), ' ');
            for (std::size_t j = 0; j < r.col_levels.size(); ++j) {
              os << " " << pad(std::to_string(r.observed[i][j]), cw[j]);
            }
            os << "\n";
          }
          os << "\nPearson's Chi-squared test\n"
             << "X-squared = " << d(r.chi_square, 5) << ", df = " << d(r.df) << ", p-value = " << d(r.p_value, 4)
             << "\n";
        } else {
          os << plot::to_string(r.kind) << " plot of " << r.x_label;
          if (!r.y_label.empty() && r.y_label != "count") os << " and " << r.y_label;
          os << "\n";
        }
      },
      result);
  return os.str();
}

bool json_close(const json& a, const json& b, double rel_tol, std::string* where) {
  auto fail = [&](const std::string& path) {
    if (where) *where = path.empty() ? "/" : path;
    return false;
  };
  struct Walker {
    double tol;
    std::string path;
    std::string* out;
    bool go(const json& x, const json& y) {
      if (x.is_number() && y.is_number()) {
        if (x.is_number_float() || y.is_number_float()) {
          const double p = x.get<double>(), q = y.get<double>();
          if (p == q) return true;
          const double scale = std::max(std::fabs(p), std::fabs(q));
          return std::fabs(p - q) <= tol * scale;
        }
        return x == y;
      }
      if (x.type() != y.type()) return false;
      if (x.is_array()) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
          const auto saved = path;
          path += "/" + std::to_string(i);
          if (!go(x[i], y[i])) return false;
          path = saved;
        }
        return true;
      }
      if (x.is_object()) {
        if (x.size() != y.size()) return false;
        for (auto it = x.begin(); it != x.end(); ++it) {
          if (!y.contains(it.key())) return false;
          const auto saved = path;
          path += "/" + it.key();
          if (!go(it.value(), y.at(it.key()))) return false;
          path = saved;
        }
        return true;
      }
      return x == y;
    }
  } walker{rel_tol, "", where};
  if (walker.go(a, b)) return true;
  return fail(walker.path);
}

}  // namespace statbench
