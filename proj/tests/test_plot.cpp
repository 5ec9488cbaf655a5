#include <doctest.h>

#include <cmath>

#include "statbench/dataset.hpp"
#include "statbench/errors.hpp"
#include "statbench/plot.hpp"
#include "statbench/svg.hpp"
#include "support/generators.hpp"

using namespace statbench;
using namespace statbench::plot;

TEST_CASE("histogram binning") {
  const auto h = histogram_geometry({1, 2, 3, 4}, 2);
  CHECK(h.breaks == std::vector<double>{1, 2.5, 4});
  CHECK(h.counts == std::vector<std::size_t>{2, 2});

  const auto def = histogram_geometry({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, std::nullopt);
  CHECK(def.counts.size() == 4);  // ceil(sqrt(10))

  const auto flat = histogram_geometry({3, 3, 3}, std::nullopt);
  CHECK(flat.counts.size() == 1);
  CHECK(flat.counts[0] == 3);
}

TEST_CASE("histogram counts sum to the non-missing values") {
  gen::Rng rng(12);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> xs;
    const int n = gen::uniform_int(rng, 1, 200);
    for (int i = 0; i < n; ++i) xs.push_back(gen::uniform(rng, -50, 50));
    const int bins = gen::uniform_int(rng, 1, 30);
    const auto h = histogram_geometry(xs, bins);
    std::size_t total = 0;
    for (auto c : h.counts) total += c;
    CHECK(total == xs.size());
    CHECK(h.breaks.size() == h.counts.size() + 1);
  }
}

TEST_CASE("bar chart counts levels") {
  const Dataset ds = parse_csv("g\nx\nx\ny\n");
  const auto spec = plot_spec(PlotKind::Bar, ds, {"g", std::nullopt});
  const auto& bar = std::get<BarGeometry>(spec.geometry);
  CHECK(bar.levels == std::vector<std::string>{"x", "y"});
  CHECK(bar.counts == std::vector<std::size_t>{2, 1});
}

TEST_CASE("scatter drops incomplete pairs") {
  const Dataset ds = parse_csv("a,b\n1,2\nNA,3\n4,5\n");
  const auto spec = plot_spec(PlotKind::Scatter, ds, {"a", std::string("b")});
  const auto& pts = std::get<ScatterGeometry>(spec.geometry).points;
  CHECK(pts == std::vector<std::pair<double, double>>{{1, 2}, {4, 5}});
}

TEST_CASE("box plot five numbers and outliers") {
  const Dataset ds = parse_csv("v,g\n1,a\n2,a\n3,a\n4,a\n100,a\n5,b\n6,b\n");
  const auto spec = plot_spec(PlotKind::Box, ds, {"v", std::string("g")});
  const auto& boxes = std::get<BoxGeometry>(spec.geometry).boxes;
  REQUIRE(boxes.size() == 2);
  CHECK(boxes[0].group == "a");
  CHECK(boxes[0].median == 3);
  CHECK(boxes[0].q1 == 2);
  CHECK(boxes[0].q3 == 4);
  CHECK(boxes[0].outliers == std::vector<double>{100});
  CHECK(boxes[0].whisker_high == 4);
  CHECK(boxes[1].n == 2);
}

TEST_CASE("mosaic rectangles tile the unit square") {
  const Dataset even = parse_csv("a,b\nx,p\nx,q\ny,p\ny,q\n");
  const auto spec = plot_spec(PlotKind::Mosaic, even, {"a", std::string("b")});
  const auto& m = std::get<MosaicGeometry>(spec.geometry);
  REQUIRE(m.rects.size() == 4);
  for (const auto& r : m.rects) CHECK(std::fabs((r.x1 - r.x0) * (r.y1 - r.y0) - 0.25) < 1e-15);

  gen::Rng rng(31);
  for (int k = 0; k < 100; ++k) {
    std::string csv = "a,b\n";
    const int n = gen::uniform_int(rng, 1, 60);
    for (int i = 0; i < n; ++i) {
      csv += "l" + std::to_string(gen::uniform_int(rng, 1, 4)) + ",m" + std::to_string(gen::uniform_int(rng, 1, 3)) + "\n";
    }
    const auto s = plot_spec(PlotKind::Mosaic, parse_csv(csv), {"a", std::string("b")});
    double area = 0;
    for (const auto& r : std::get<MosaicGeometry>(s.geometry).rects) {
      const double a = (r.x1 - r.x0) * (r.y1 - r.y0);
      CHECK(std::fabs(a - static_cast<double>(r.count) / n) < 1e-12);
      area += a;
    }
    CHECK(std::fabs(area - 1) < 1e-12);
  }
}

TEST_CASE("wrong variable types are rejected with the variable named") {
  const Dataset ds = parse_csv("n,c\n1,x\n2,y\n");
  try {
    plot_spec(PlotKind::Histogram, ds, {"c", std::nullopt});
    FAIL("expected a type error");
  } catch (const TypeError& e) {
    CHECK(std::string(e.what()).find("'c'") != std::string::npos);
  }
  CHECK_THROWS_AS(plot_spec(PlotKind::Bar, ds, {"n", std::nullopt}), TypeError);
  CHECK_THROWS_AS(plot_spec(PlotKind::Scatter, ds, {"n", std::string("c")}), TypeError);
  CHECK_THROWS_AS(plot_spec(PlotKind::Mosaic, ds, {"c", std::string("n")}), TypeError);
}

TEST_CASE("SVG output is deterministic and well formed") {
  const Dataset ds = parse_csv("a,b,g\n1,2,x\n3,1,y\n2,5,x\n");
  for (auto [kind, x, y] : std::vector<std::tuple<PlotKind, std::string, std::optional<std::string>>>{
           {PlotKind::Histogram, "a", std::nullopt},
           {PlotKind::Bar, "g", std::nullopt},
           {PlotKind::Scatter, "a", std::string("b")},
           {PlotKind::Box, "a", std::string("g")},
           {PlotKind::Mosaic, "g", std::string("g")}}) {
    const auto spec = plot_spec(kind, ds, {x, y});
    const std::string a = svg::render(spec), b = svg::render(spec);
    CHECK(a == b);
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("</svg>") != std::string::npos);
  }
}
