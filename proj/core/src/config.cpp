#include "bqs/config.hpp"

#include "bqs/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace bqs {

namespace {

using nlohmann::json;

void reject_unknown(const json& block, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : block.items()) {
    if (!known.contains(key)) {
      throw ParseError("unknown config key '" + where + "." + key + "'");
    }
  }
}

template <typename T>
void take(const json& block, const char* key, T& target) {
  if (block.contains(key)) {
    try {
      target = block.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad value for config key '") + key + "': " + e.what());
    }
  }
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config root must be a JSON object");
  reject_unknown(doc, {"geometry", "pump", "noise", "grids", "thresholds", "quadrature"},
                 "<root>");

  RunConfig cfg;
  if (doc.contains("geometry")) {
    const auto& g = doc.at("geometry");
    reject_unknown(g,
                   {"wavelength_m", "dimension", "slit_half_width_m", "slit_spacing_m",
                    "z_aperture_m", "detector_near_offset_m", "detector_slit_width_m",
                    "lens_focal_m", "lens_position_m", "detector_far_plane_m"},
                   "geometry");
    take(g, "wavelength_m", cfg.geometry.wavelength);
    take(g, "dimension", cfg.geometry.dimension);
    take(g, "slit_half_width_m", cfg.geometry.slit_half_width);
    take(g, "slit_spacing_m", cfg.geometry.slit_spacing);
    take(g, "z_aperture_m", cfg.geometry.z_aperture);
    take(g, "detector_near_offset_m", cfg.geometry.detector_near_offset);
    take(g, "detector_slit_width_m", cfg.geometry.detector_slit_width);
    take(g, "lens_focal_m", cfg.geometry.lens_focal);
    take(g, "lens_position_m", cfg.geometry.lens_position);
    take(g, "detector_far_plane_m", cfg.geometry.detector_far_plane);
  }
  if (doc.contains("pump")) {
    const auto& p = doc.at("pump");
    reject_unknown(p, {"shape", "waist_m", "center_m"}, "pump");
    std::string shape = "gaussian";
    take(p, "shape", shape);
    if (shape != "gaussian") {
      throw ParseError("config pump.shape must be 'gaussian' (tabulated profiles are "
                       "constructed programmatically)");
    }
    double waist = cfg.pump.waist, center = cfg.pump.center;
    take(p, "waist_m", waist);
    take(p, "center_m", center);
    if (!(waist > 0.0)) throw ParseError("config pump.waist_m must be positive");
    cfg.pump = PumpProfile::gaussian_beam(waist, center);
  }
  if (doc.contains("noise")) {
    const auto& n = doc.at("noise");
    reject_unknown(n, {"seed", "mean_pair_flux_hz", "acquisition_s"}, "noise");
    take(n, "seed", cfg.noise.seed);
    take(n, "mean_pair_flux_hz", cfg.noise.mean_pair_flux);
    take(n, "acquisition_s", cfg.noise.acquisition);
  }
  if (doc.contains("grids")) {
    const auto& g = doc.at("grids");
    reject_unknown(g,
                   {"scan_step_m", "fringe_min_m", "fringe_max_m", "fringe_points",
                    "x2_slices_m", "map_points"},
                   "grids");
    take(g, "scan_step_m", cfg.grids.scan_step);
    take(g, "fringe_min_m", cfg.grids.fringe_min);
    take(g, "fringe_max_m", cfg.grids.fringe_max);
    take(g, "fringe_points", cfg.grids.fringe_points);
    take(g, "x2_slices_m", cfg.grids.x2_slices);
    take(g, "map_points", cfg.grids.map_points);
  }
  if (doc.contains("thresholds")) {
    const auto& t = doc.at("thresholds");
    reject_unknown(t, {"witness_score", "witness_visibility"}, "thresholds");
    take(t, "witness_score", cfg.thresholds.score);
    take(t, "witness_visibility", cfg.thresholds.visibility);
  }
  if (doc.contains("quadrature")) {
    const auto& q = doc.at("quadrature");
    reject_unknown(q, {"base_order", "rel_tol", "max_order"}, "quadrature");
    take(q, "base_order", cfg.quadrature.base_order);
    take(q, "rel_tol", cfg.quadrature.rel_tol);
    take(q, "max_order", cfg.quadrature.max_order);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string default_config_json() {
  const RunConfig cfg;
  json doc;
  doc["geometry"] = {{"wavelength_m", cfg.geometry.wavelength},
                     {"dimension", cfg.geometry.dimension},
                     {"slit_half_width_m", cfg.geometry.slit_half_width},
                     {"slit_spacing_m", cfg.geometry.slit_spacing},
                     {"z_aperture_m", cfg.geometry.z_aperture},
                     {"detector_near_offset_m", cfg.geometry.detector_near_offset},
                     {"detector_slit_width_m", cfg.geometry.detector_slit_width},
                     {"lens_focal_m", cfg.geometry.lens_focal},
                     {"lens_position_m", cfg.geometry.lens_position},
                     {"detector_far_plane_m", cfg.geometry.detector_far_plane}};
  doc["pump"] = {{"shape", "gaussian"}, {"waist_m", cfg.pump.waist}, {"center_m", cfg.pump.center}};
  doc["noise"] = {{"seed", cfg.noise.seed},
                  {"mean_pair_flux_hz", cfg.noise.mean_pair_flux},
                  {"acquisition_s", cfg.noise.acquisition}};
  doc["grids"] = {{"scan_step_m", cfg.grids.scan_step},
                  {"fringe_min_m", cfg.grids.fringe_min},
                  {"fringe_max_m", cfg.grids.fringe_max},
                  {"fringe_points", cfg.grids.fringe_points},
                  {"x2_slices_m", cfg.grids.x2_slices},
                  {"map_points", cfg.grids.map_points}};
  doc["thresholds"] = {{"witness_score", cfg.thresholds.score},
                       {"witness_visibility", cfg.thresholds.visibility}};
  doc["quadrature"] = {{"base_order", cfg.quadrature.base_order},
                       {"rel_tol", cfg.quadrature.rel_tol},
                       {"max_order", cfg.quadrature.max_order}};
  return doc.dump(2) + "\n";
}

} // namespace bqs
