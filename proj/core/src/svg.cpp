#include "bqs/svg.hpp"

#include "bqs/csv.hpp"
#include "bqs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace bqs {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 500;
constexpr int kMarginLeft = 80;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi <= lo) hi = lo + 1.0;
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_frame(std::ofstream& out, const Range& xr, const Range& yr, const std::string& title,
                 const std::string& x_label, const std::string& y_label) {
  out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
      << kWidth - kMarginLeft - kMarginRight << "\" height=\""
      << kHeight - kMarginTop - kMarginBottom
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
      << "font-family=\"sans-serif\">" << escape(title) << "</text>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">"
      << escape(x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
      << "transform=\"rotate(-90 18 " << kHeight / 2 << ")\">" << escape(y_label)
      << "</text>\n";

  const int plot_w = kWidth - kMarginLeft - kMarginRight;
  const int plot_h = kHeight - kMarginTop - kMarginBottom;
  for (int t = 0; t <= 5; ++t) {
    const double fx = t / 5.0;
    const double px = kMarginLeft + fx * plot_w;
    const double vx = xr.lo + fx * (xr.hi - xr.lo);
    out << "<line x1=\"" << px << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << px
        << "\" y2=\"" << kMarginTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << kMarginTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
        << short_number(vx) << "</text>\n";
    const double py = kMarginTop + plot_h - fx * plot_h;
    const double vy = yr.lo + fx * (yr.hi - yr.lo);
    out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
        << short_number(vy) << "</text>\n";
  }
}

} // namespace

void write_line_plot_svg(const std::filesystem::path& path, const std::vector<PlotSeries>& series,
                         const std::string& title, const std::string& x_label,
                         const std::string& y_label) {
  if (series.empty()) throw ValidationError("plot needs at least one series");
  Range xr{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  Range yr = xr;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty()) {
      throw ValidationError("plot series must be nonempty with matching x/y lengths");
    }
    for (const double v : s.x) xr.include(v);
    for (const double v : s.y) yr.include(v);
  }
  xr.pad();
  yr.pad();

  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  write_frame(out, xr, yr, title, x_label, y_label);

  const int plot_w = kWidth - kMarginLeft - kMarginRight;
  const int plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto to_px = [&](double x, double y) {
    const double px = kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
    const double py = kMarginTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h;
    return std::pair<double, double>{px, py};
  };

  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (series[s].points_only) {
      for (size_t i = 0; i < series[s].x.size(); ++i) {
        const auto [px, py] = to_px(series[s].x[i], series[s].y[i]);
        out << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"2.5\" fill=\"" << color
            << "\"/>\n";
      }
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (size_t i = 0; i < series[s].x.size(); ++i) {
        const auto [px, py] = to_px(series[s].x[i], series[s].y[i]);
        out << px << ',' << py << ' ';
      }
      out << "\"/>\n";
    }
  }

  // legend, top-right corner of the plot area
  const double lx = kMarginLeft + plot_w - 190;
  double ly = kMarginTop + 12;
  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 22 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << lx + 28 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << escape(series[s].label)
        << "</text>\n";
    ly += 18;
  }
  out << "</svg>\n";
}

void write_heatmap_svg(const std::filesystem::path& path, const CoincidenceMap& map,
                       const std::string& title) {
  if (map.x1.empty() || map.x2.empty()) throw ValidationError("empty map");
  double max_rate = 0.0;
  for (const double r : map.rate) max_rate = std::max(max_rate, r);
  if (max_rate <= 0.0) max_rate = 1.0;

  Range xr{map.x1.front(), map.x1.back()};
  Range yr{map.x2.front(), map.x2.back()};

  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  write_frame(out, xr, yr, title, "x1 (m)", "x2 (m)");

  const int plot_w = kWidth - kMarginLeft - kMarginRight;
  const int plot_h = kHeight - kMarginTop - kMarginBottom;
  const double cw = static_cast<double>(plot_w) / static_cast<double>(map.x1.size());
  const double ch = static_cast<double>(plot_h) / static_cast<double>(map.x2.size());
  for (size_t i = 0; i < map.x1.size(); ++i) {
    for (size_t j = 0; j < map.x2.size(); ++j) {
      const double value = map.rate[i * map.x2.size() + j] / max_rate;
      const int shade = 255 - static_cast<int>(std::lround(value * 255.0));
      const double px = kMarginLeft + static_cast<double>(i) * cw;
      const double py = kMarginTop + plot_h - static_cast<double>(j + 1) * ch;
      out << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cw + 0.5
          << "\" height=\"" << ch + 0.5 << "\" fill=\"rgb(" << shade << ',' << shade << ','
          << shade << ")\"/>\n";
    }
  }
  out << "</svg>\n";
}

} // namespace bqs
