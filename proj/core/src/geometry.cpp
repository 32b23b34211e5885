#include "bqs/geometry.hpp"

#include "bqs/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace bqs {

std::string SlitIndex::label() const {
  std::ostringstream os;
  if (twice_l % 2 == 0) {
    if (twice_l > 0) os << '+';
    os << twice_l / 2;
  } else {
    os << (twice_l > 0 ? "+" : "-") << std::abs(twice_l) << "/2";
  }
  return os.str();
}

std::optional<SlitIndex> parse_slit_label(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::string body = text;
  int sign = 1;
  if (body.front() == '+' || body.front() == '-') {
    sign = body.front() == '-' ? -1 : 1;
    body.erase(body.begin());
  }
  if (body.empty()) return std::nullopt;
  const auto slash = body.find('/');
  try {
    if (slash == std::string::npos) {
      size_t used = 0;
      const int whole = std::stoi(body, &used);
      if (used != body.size()) return std::nullopt;
      return SlitIndex{sign * 2 * whole};
    }
    const std::string num = body.substr(0, slash);
    const std::string den = body.substr(slash + 1);
    if (den != "2" || num.empty()) return std::nullopt;
    size_t used = 0;
    const int numerator = std::stoi(num, &used);
    if (used != num.size()) return std::nullopt;
    return SlitIndex{sign * numerator};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<SlitIndex> slit_indices(int dimension) {
  if (dimension < 2) throw ValidationError("dimension below 2");
  std::vector<SlitIndex> out;
  out.reserve(static_cast<size_t>(dimension));
  for (int t = -(dimension - 1); t <= dimension - 1; t += 2) {
    out.push_back(SlitIndex{t});
  }
  return out;
}

namespace {

void require_positive(std::vector<std::string>& errs, double v, const char* name) {
  if (!(v > 0.0)) {
    errs.push_back(std::string("non-positive ") + name);
  }
}

} // namespace

std::vector<std::string> validation_errors(const ExperimentGeometry& g) {
  std::vector<std::string> errs;
  if (g.dimension < 2) errs.push_back("dimension below 2");
  require_positive(errs, g.wavelength, "wavelength");
  require_positive(errs, g.slit_half_width, "slit_half_width");
  require_positive(errs, g.slit_spacing, "slit_spacing");
  require_positive(errs, g.z_aperture, "z_aperture");
  require_positive(errs, g.detector_near_offset, "detector_near_offset");
  require_positive(errs, g.detector_slit_width, "detector_slit_width");
  require_positive(errs, g.lens_focal, "lens_focal");
  require_positive(errs, g.lens_position, "lens_position");
  require_positive(errs, g.detector_far_plane, "detector_far_plane");
  if (g.slit_half_width > 0.0 && !(g.slit_spacing > 2.0 * g.slit_half_width)) {
    errs.push_back("slits not disjoint (require slit_spacing > 2*slit_half_width)");
  }
  if (!(g.z_aperture < g.lens_position && g.lens_position < g.detector_far_plane)) {
    errs.push_back(
        "far-field ordering violated (require z_aperture < lens_position < detector_far_plane)");
  }
  if (g.wavelength > 0.0 && g.wavenumber != 0.0) {
    const double expected = 2.0 * std::numbers::pi / g.wavelength;
    if (std::abs(g.wavenumber - expected) > 1e-12 * expected) {
      errs.push_back("wavenumber inconsistent with 2*pi/wavelength");
    }
  }
  return errs;
}

ExperimentGeometry validate(const ExperimentGeometry& g) {
  const auto errs = validation_errors(g);
  if (!errs.empty()) {
    std::string msg = "invalid geometry:";
    for (const auto& e : errs) msg += "\n  - " + e;
    throw ValidationError(msg);
  }
  ExperimentGeometry out = g;
  out.wavenumber = 2.0 * std::numbers::pi / out.wavelength;
  return out;
}

double slit_position(SlitIndex l, const ExperimentGeometry& g) {
  return l.value() * g.slit_spacing;
}

std::optional<SlitIndex> nearest_slit(double x, const ExperimentGeometry& g) {
  for (const auto l : slit_indices(g.dimension)) {
    if (std::abs(x - slit_position(l, g)) <= g.slit_half_width) return l;
  }
  return std::nullopt;
}

} // namespace bqs
