#include "statbench/plot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "statbench/errors.hpp"
#include "statbench/stats.hpp"

namespace statbench::plot {

std::string_view to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::Histogram: return "histogram";
    case PlotKind::Bar: return "bar";
    case PlotKind::Scatter: return "scatter";
    case PlotKind::Box: return "box";
    case PlotKind::Mosaic: return "mosaic";
  }
  return "?";
}

std::optional<PlotKind> plot_kind_from_string(std::string_view name) {
  for (auto k : {PlotKind::Histogram, PlotKind::Bar, PlotKind::Scatter, PlotKind::Box, PlotKind::Mosaic}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

const Column& typed_column(const Dataset& ds, const std::string& name, ColumnType type) {
  const Column* c = ds.find(name);
  if (!c) throw NotFoundError("unknown variable '" + name + "'");
  if (c->type() != type) {
    throw TypeError("variable '" + name + "' must be " + std::string(statbench::to_string(type)));
  }
  return *c;
}

const std::string& require_second(const PlotBindings& vars, PlotKind kind) {
  if (!vars.y) throw TypeError(std::string(to_string(kind)) + " plot needs a second variable");
  return *vars.y;
}

BoxStats box_stats(std::string group, std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  BoxStats b;
  b.group = std::move(group);
  b.n = xs.size();
  b.q1 = stats::quantile_sorted(xs, 0.25);
  b.median = stats::quantile_sorted(xs, 0.5);
  b.q3 = stats::quantile_sorted(xs, 0.75);
  const double iqr = b.q3 - b.q1;
  const double lo_fence = b.q1 - 1.5 * iqr, hi_fence = b.q3 + 1.5 * iqr;
  b.whisker_low = b.q1;
  b.whisker_high = b.q3;
  for (double v : xs) {
    if (v < lo_fence || v > hi_fence) {
      b.outliers.push_back(v);
    } else {
      b.whisker_low = std::min(b.whisker_low, v);
      b.whisker_high = std::max(b.whisker_high, v);
    }
  }
  return b;
}

}  // namespace

HistogramGeometry histogram_geometry(std::vector<double> values, std::optional<int> bins) {
  if (values.empty()) throw DomainError("histogram needs at least one non-missing value");
  if (bins && *bins < 1) throw DomainError("histogram bins must be positive");
  const int k = bins ? *bins : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(values.size()))));
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  HistogramGeometry g;
  if (*lo_it == *hi_it) {
    g.breaks = {*lo_it - 0.5, *lo_it + 0.5};
    g.counts = {values.size()};
    return g;
  }
  g.breaks = equal_width_breaks(*lo_it, *hi_it, k);
  g.counts.assign(static_cast<std::size_t>(k), 0);
  for (double v : values) ++g.counts[bin_index(g.breaks, v)];
  return g;
}

PlotSpec plot_spec(PlotKind kind, const Dataset& ds, const PlotBindings& vars, const PlotOptions& options) {
  PlotSpec spec;
  spec.kind = kind;
  spec.x_label = vars.x;
  switch (kind) {
    case PlotKind::Histogram: {
      const auto& x = typed_column(ds, vars.x, ColumnType::Numeric);
      spec.y_label = "count";
      spec.geometry = histogram_geometry(x.numbers(), options.bins);
      break;
    }
    case PlotKind::Bar: {
      const auto& x = typed_column(ds, vars.x, ColumnType::Categorical);
      std::map<std::string, std::size_t> counts;
      for (const auto& c : x.cells()) {
        if (c.is_label()) ++counts[c.label()];
      }
      if (counts.empty()) throw DomainError("bar chart needs at least one non-missing value");
      BarGeometry g;
      for (const auto& [level, n] : counts) {
        g.levels.push_back(level);
        g.counts.push_back(n);
      }
      spec.y_label = "count";
      spec.geometry = std::move(g);
      break;
    }
    case PlotKind::Scatter: {
      const auto& x = typed_column(ds, vars.x, ColumnType::Numeric);
      const auto& y = typed_column(ds, require_second(vars, kind), ColumnType::Numeric);
      ScatterGeometry g;
      for (std::size_t i = 0; i < ds.n_rows(); ++i) {
        const auto &cx = x.cells()[i], &cy = y.cells()[i];
        if (cx.is_number() && cy.is_number()) g.points.emplace_back(cx.number(), cy.number());
      }
      if (g.points.empty()) throw DomainError("scatter plot needs at least one complete pair");
      spec.y_label = y.name();
      spec.geometry = std::move(g);
      break;
    }
    case PlotKind::Box: {
      const auto& x = typed_column(ds, vars.x, ColumnType::Numeric);
      BoxGeometry g;
      if (vars.y) {
        const auto& group = typed_column(ds, *vars.y, ColumnType::Categorical);
        std::map<std::string, std::vector<double>> by_group;
        for (std::size_t i = 0; i < ds.n_rows(); ++i) {
          const auto &cx = x.cells()[i], &cg = group.cells()[i];
          if (cx.is_number() && cg.is_label()) by_group[cg.label()].push_back(cx.number());
        }
        for (auto& [level, xs] : by_group) g.boxes.push_back(box_stats(level, std::move(xs)));
        spec.y_label = group.name();
      } else {
        auto xs = x.numbers();
        if (!xs.empty()) g.boxes.push_back(box_stats("", std::move(xs)));
      }
      if (g.boxes.empty()) throw DomainError("box plot needs at least one non-missing value");
      spec.geometry = std::move(g);
      break;
    }
    case PlotKind::Mosaic: {
      const auto& x = typed_column(ds, vars.x, ColumnType::Categorical);
      const auto& y = typed_column(ds, require_second(vars, kind), ColumnType::Categorical);
      std::map<std::pair<std::string, std::string>, std::size_t> counts;
      std::set<std::string> xl, yl;
      std::size_t total = 0;
      for (std::size_t i = 0; i < ds.n_rows(); ++i) {
        const auto &cx = x.cells()[i], &cy = y.cells()[i];
        if (!cx.is_label() || !cy.is_label()) continue;
        xl.insert(cx.label());
        yl.insert(cy.label());
        ++counts[{cx.label(), cy.label()}];
        ++total;
      }
      if (total == 0) throw DomainError("mosaic plot needs at least one complete pair");
      MosaicGeometry g;
      g.x_levels.assign(xl.begin(), xl.end());
      g.y_levels.assign(yl.begin(), yl.end());
      double x0 = 0;
      std::size_t cum_x = 0;
      for (std::size_t i = 0; i < g.x_levels.size(); ++i) {
        std::size_t col_total = 0;
        for (const auto& ylev : g.y_levels) {
          auto it = counts.find({g.x_levels[i], ylev});
          if (it != counts.end()) col_total += it->second;
        }
        cum_x += col_total;
        const double x1 = i + 1 == g.x_levels.size() ? 1.0 : static_cast<double>(cum_x) / total;
        double y0 = 0;
        std::size_t cum_y = 0;
        for (std::size_t j = 0; j < g.y_levels.size(); ++j) {
          auto it = counts.find({g.x_levels[i], g.y_levels[j]});
          const std::size_t c = it == counts.end() ? 0 : it->second;
          cum_y += c;
          const double y1 = j + 1 == g.y_levels.size() ? 1.0 : static_cast<double>(cum_y) / col_total;
          g.rects.push_back({g.x_levels[i], g.y_levels[j], x0, y0, x1, y1, c});
          y0 = y1;
        }
        x0 = x1;
      }
      spec.y_label = y.name();
      spec.geometry = std::move(g);
      break;
    }
  }
  return spec;
}

}  // namespace statbench::plot
