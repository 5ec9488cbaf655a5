#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "statbench/dataset.hpp"

namespace statbench::plot {

enum class PlotKind { Histogram, Bar, Scatter, Box, Mosaic };

std::string_view to_string(PlotKind kind);
std::optional<PlotKind> plot_kind_from_string(std::string_view name);

struct HistogramGeometry {
  std::vector<double> breaks;
  std::vector<std::size_t> counts;
  bool operator==(const HistogramGeometry&) const = default;
};

struct BarGeometry {
  std::vector<std::string> levels;
  std::vector<std::size_t> counts;
  bool operator==(const BarGeometry&) const = default;
};

struct ScatterGeometry {
  std::vector<std::pair<double, double>> points;
  bool operator==(const ScatterGeometry&) const = default;
};

struct BoxStats {
  std::string group;  // empty when ungrouped
  std::size_t n = 0;
  double whisker_low = 0, q1 = 0, median = 0, q3 = 0, whisker_high = 0;
  std::vector<double> outliers;
  bool operator==(const BoxStats&) const = default;
};

struct BoxGeometry {
  std::vector<BoxStats> boxes;
  bool operator==(const BoxGeometry&) const = default;
};

struct MosaicRect {
  std::string x_level, y_level;
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  std::size_t count = 0;
  bool operator==(const MosaicRect&) const = default;
};

struct MosaicGeometry {
  std::vector<std::string> x_levels, y_levels;
  std::vector<MosaicRect> rects;
  bool operator==(const MosaicGeometry&) const = default;
};

using Geometry = std::variant<HistogramGeometry, BarGeometry, ScatterGeometry, BoxGeometry, MosaicGeometry>;

struct PlotSpec {
  PlotKind kind = PlotKind::Histogram;
  std::string x_label, y_label;
  Geometry geometry;
  bool operator==(const PlotSpec&) const = default;
};

struct PlotBindings {
  std::string x;
  std::optional<std::string> y;  // second variable: scatter y, box group, mosaic y
};

struct PlotOptions {
  std::optional<int> bins;  // histogram only; default ceil(sqrt(n))
};

/// Throws TypeError when a bound variable has the wrong type for the plot kind.
PlotSpec plot_spec(PlotKind kind, const Dataset& ds, const PlotBindings& vars, const PlotOptions& options = {});

HistogramGeometry histogram_geometry(std::vector<double> values, std::optional<int> bins);

}  // namespace statbench::plot
