#pragma once

#include "bqs/diagnostics.hpp"
#include "bqs/geometry.hpp"
#include "bqs/state_prep.hpp"
#include "bqs/states.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace bqs {

/// Full run configuration. Every field defaults to the reference bench
/// value, so an empty JSON document {} is a valid config. All lengths are
/// meters. Block structure of the JSON document:
///
///   {
///     "geometry":   { "wavelength_m", "dimension", "slit_half_width_m",
///                     "slit_spacing_m", "z_aperture_m",
///                     "detector_near_offset_m", "detector_slit_width_m",
///                     "lens_focal_m", "lens_position_m",
///                     "detector_far_plane_m" },
///     "pump":       { "shape" ("gaussian"), "waist_m", "center_m" },
///     "noise":      { "seed", "mean_pair_flux_hz", "acquisition_s" },
///     "grids":      { "scan_step_m", "fringe_min_m", "fringe_max_m",
///                     "fringe_points", "x2_slices_m" (array),
///                     "map_points" },
///     "thresholds": { "witness_score", "witness_visibility" },
///     "quadrature": { "base_order", "rel_tol", "max_order" }
///   }
struct RunConfig {
  ExperimentGeometry geometry;
  PumpProfile pump = PumpProfile::gaussian_beam(4.5e-6, 0.0);

  struct Noise {
    std::uint64_t seed = 12345;
    double mean_pair_flux = 5000.0; ///< detected pairs/s at full overlap
    double acquisition = 1.0;       ///< s per scan point
  } noise;

  struct Grids {
    double scan_step = 1e-5;
    double fringe_min = -2.5e-3;
    double fringe_max = 2.5e-3;
    int fringe_points = 501;
    std::vector<double> x2_slices = {0.0, 3e-4};
    int map_points = 101;
  } grids;

  WitnessThresholds thresholds;
  QuadratureSpec quadrature;
};

/// Parses a JSON document; unknown keys are rejected (they are almost always
/// typos). Throws ParseError.
RunConfig parse_config(const std::string& json_text);

/// Reads and parses a JSON config file.
RunConfig load_config(const std::filesystem::path& path);

/// The defaults rendered as a JSON document (schema reference).
std::string default_config_json();

} // namespace bqs
