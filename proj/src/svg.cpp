#include "statbench/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "statbench/numfmt.hpp"

namespace statbench::svg {

namespace {

constexpr double kMargin = 40;

std::string f(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Maps data coordinates onto the plotting area.
struct Frame {
  double x0, x1, y0, y1;
  double w, h;
  double px(double x) const { return kMargin + (x1 > x0 ? (x - x0) / (x1 - x0) : 0.5) * (w - 2 * kMargin); }
  double py(double y) const { return h - kMargin - (y1 > y0 ? (y - y0) / (y1 - y0) : 0.5) * (h - 2 * kMargin); }
};

void rect(std::ostringstream& os, double x, double y, double w, double h, const char* fill) {
  os << "<rect x=\"" << f(x) << "\" y=\"" << f(y) << "\" width=\"" << f(std::max(0.0, w)) << "\" height=\""
     << f(std::max(0.0, h)) << "\" fill=\"" << fill << "\" stroke=\"#333\" stroke-width=\"0.5\"/>\n";
}

void line(std::ostringstream& os, double xa, double ya, double xb, double yb) {
  os << "<line x1=\"" << f(xa) << "\" y1=\"" << f(ya) << "\" x2=\"" << f(xb) << "\" y2=\"" << f(yb)
     << "\" stroke=\"#333\"/>\n";
}

void text(std::ostringstream& os, double x, double y, const std::string& s, const char* anchor = "middle") {
  os << "<text x=\"" << f(x) << "\" y=\"" << f(y) << "\" font-size=\"11\" text-anchor=\"" << anchor << "\">"
     << escape(s) << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& fr, const plot::PlotSpec& spec, bool numeric_x, bool numeric_y) {
  line(os, kMargin, fr.h - kMargin, fr.w - kMargin, fr.h - kMargin);
  line(os, kMargin, kMargin, kMargin, fr.h - kMargin);
  if (numeric_x) {
    text(os, kMargin, fr.h - kMargin + 14, format_display(fr.x0, 4));
    text(os, fr.w - kMargin, fr.h - kMargin + 14, format_display(fr.x1, 4));
  }
  if (numeric_y) {
    text(os, kMargin - 4, fr.h - kMargin, format_display(fr.y0, 4), "end");
    text(os, kMargin - 4, kMargin + 4, format_display(fr.y1, 4), "end");
  }
  text(os, fr.w / 2, fr.h - 8, spec.x_label);
  if (!spec.y_label.empty()) {
    os << "<text x=\"12\" y=\"" << f(fr.h / 2) << "\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 12 "
       << f(fr.h / 2) << ")\">" << escape(spec.y_label) << "</text>\n";
  }
}

}  // namespace

std::string render(const plot::PlotSpec& spec, int width, int height) {
  std::ostringstream os;
  const double w = width, h = height;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, plot::HistogramGeometry>) {
          const double top = static_cast<double>(*std::max_element(g.counts.begin(), g.counts.end()));
          Frame fr{g.breaks.front(), g.breaks.back(), 0, std::max(1.0, top), w, h};
          for (std::size_t i = 0; i < g.counts.size(); ++i) {
            const double xa = fr.px(g.breaks[i]), xb = fr.px(g.breaks[i + 1]);
            const double ya = fr.py(static_cast<double>(g.counts[i]));
            rect(os, xa, ya, xb - xa, fr.py(0) - ya, "#7aa6c2");
          }
          axes(os, fr, spec, true, true);
        } else if constexpr (std::is_same_v<G, plot::BarGeometry>) {
          const double top = static_cast<double>(*std::max_element(g.counts.begin(), g.counts.end()));
          Frame fr{0, static_cast<double>(g.counts.size()), 0, std::max(1.0, top), w, h};
          for (std::size_t i = 0; i < g.counts.size(); ++i) {
            const double xa = fr.px(i + 0.1), xb = fr.px(i + 0.9);
            const double ya = fr.py(static_cast<double>(g.counts[i]));
            rect(os, xa, ya, xb - xa, fr.py(0) - ya, "#7aa6c2");
            text(os, fr.px(i + 0.5), h - kMargin + 14, g.levels[i]);
          }
          axes(os, fr, spec, false, true);
        } else if constexpr (std::is_same_v<G, plot::ScatterGeometry>) {
          double xa = g.points[0].first, xb = xa, ya = g.points[0].second, yb = ya;
          for (const auto& [x, y] : g.points) {
            xa = std::min(xa, x);
            xb = std::max(xb, x);
            ya = std::min(ya, y);
            yb = std::max(yb, y);
          }
          Frame fr{xa, xb, ya, yb, w, h};
          for (const auto& [x, y] : g.points) {
            os << "<circle cx=\"" << f(fr.px(x)) << "\" cy=\"" << f(fr.py(y)) << "\" r=\"2.5\" fill=\"#2b5d7d\"/>\n";
          }
          axes(os, fr, spec, true, true);
        } else if constexpr (std::is_same_v<G, plot::BoxGeometry>) {
          double lo = g.boxes[0].whisker_low, hi = g.boxes[0].whisker_high;
          for (const auto& b : g.boxes) {
            lo = std::min(lo, b.whisker_low);
            hi = std::max(hi, b.whisker_high);
            for (double o : b.outliers) {
              lo = std::min(lo, o);
              hi = std::max(hi, o);
            }
          }
          Frame fr{0, static_cast<double>(g.boxes.size()), lo, hi, w, h};
          for (std::size_t i = 0; i < g.boxes.size(); ++i) {
            const auto& b = g.boxes[i];
            const double xa = fr.px(i + 0.25), xb = fr.px(i + 0.75), xm = fr.px(i + 0.5);
            line(os, xm, fr.py(b.whisker_low), xm, fr.py(b.q1));
            line(os, xm, fr.py(b.q3), xm, fr.py(b.whisker_high));
            rect(os, xa, fr.py(b.q3), xb - xa, fr.py(b.q1) - fr.py(b.q3), "#c9dbe6");
            line(os, xa, fr.py(b.median), xb, fr.py(b.median));
            for (double o : b.outliers) {
              os << "<circle cx=\"" << f(xm) << "\" cy=\"" << f(fr.py(o)) << "\" r=\"2\" fill=\"none\" stroke=\"#333\"/>\n";
            }
            if (!b.group.empty()) text(os, xm, h - kMargin + 14, b.group);
          }
          axes(os, fr, spec, false, true);
        } else {
          Frame fr{0, 1, 0, 1, w, h};
          static const char* fills[] = {"#7aa6c2", "#e3a66f", "#8fbf8f", "#c48fbf", "#d9d27a", "#9aa0a6"};
          std::size_t k = 0;
          for (const auto& r : g.rects) {
            const double xa = fr.px(r.x0), xb = fr.px(r.x1);
            const double ya = fr.py(r.y1), yb = fr.py(r.y0);
            // Small gaps keep neighbouring tiles distinguishable.
            rect(os, xa + 1, ya + 1, xb - xa - 2, yb - ya - 2, fills[k++ % g.y_levels.size() % 6]);
          }
          double x0 = 0;
          for (const auto& r : g.rects) {
            if (r.y0 == 0) {
              text(os, fr.px((r.x0 + r.x1) / 2), h - kMargin + 14, r.x_level);
              x0 = r.x1;
            }
          }
          (void)x0;
          axes(os, fr, spec, false, false);
        }
      },
      spec.geometry);
  os << "</svg>\n";
  return os.str();
}

}  // namespace statbench::svg
