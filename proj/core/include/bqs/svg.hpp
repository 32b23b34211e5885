#pragma once

#include "bqs/far_field.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace bqs {

/// One polyline (or point series) of a line plot.
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool points_only = false; ///< draw markers instead of a connected line
};

/// Minimal native SVG line plot: 800x500 px, axes with tick labels, a
/// legend, no external dependencies. Intended as a convenience; the CSVs
/// are the authoritative outputs.
void write_line_plot_svg(const std::filesystem::path& path, const std::vector<PlotSeries>& series,
                         const std::string& title, const std::string& x_label,
                         const std::string& y_label);

/// Grayscale cell heatmap of a coincidence map, same canvas and decorations.
void write_heatmap_svg(const std::filesystem::path& path, const CoincidenceMap& map,
                       const std::string& title);

} // namespace bqs
