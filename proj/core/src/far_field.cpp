#include "bqs/far_field.hpp"

#include "bqs/errors.hpp"
#include "bqs/state_prep.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace bqs {

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

FarFieldParams far_field_params(const ExperimentGeometry& g) {
  const auto geom = validate(g);
  const double f = geom.lens_focal;
  const double u = geom.detector_far_plane - geom.lens_position - f;
  const double v = geom.detector_far_plane - geom.z_aperture - f;
  const double denom = f * f - u * v;
  if (std::abs(denom) <= 1e-12 * f * f) {
    throw NumericalError("degenerate imaging configuration: f^2 - (z-z_L-f)(z-z_A-f) = 0");
  }
  FarFieldParams p;
  p.beta = geom.wavenumber * f * geom.slit_spacing / denom;
  p.phi = geom.slit_spacing *
          (f * f - u * (geom.detector_far_plane + geom.z_aperture - f)) /
          (2.0 * f * geom.z_aperture);
  p.eta = u / f;
  p.alpha = 0.5 * p.beta * p.eta * geom.slit_spacing;
  return p;
}

namespace {

// Single-slit diffraction envelope seen by detector r (1 or 2) for slit s.
double envelope(double x, double s, int r, const FarFieldParams& p,
                const ExperimentGeometry& g) {
  const double sign = (r == 1) ? -1.0 : 1.0;
  return sinc(g.slit_half_width * p.beta * (x + sign * s * p.eta * g.slit_spacing) /
              g.slit_spacing);
}

// Detection kernel of one arm: amplitude for a photon in slit mode s to
// arrive at detector position x. Identical optics in both arms.
std::complex<double> kernel(double x, double s, const FarFieldParams& p,
                            const ExperimentGeometry& g) {
  const double env =
      sinc(g.slit_half_width * p.beta * (x + s * p.eta * g.slit_spacing) / g.slit_spacing);
  return std::polar(env, -(p.beta * s * x + p.alpha * s * s));
}

double closed_form_impl(double x1, double x2, const ExperimentGeometry& g) {
  const auto geom = validate(g);
  const auto p = far_field_params(geom);
  const auto slits = slit_indices(geom.dimension);
  double total = 0.0;
  for (const auto li : slits) {
    const double l = li.value();
    const double vll = envelope(x1, l, 1, p, geom) * envelope(x1, l, 1, p, geom) *
                       envelope(x2, l, 2, p, geom) * envelope(x2, l, 2, p, geom);
    total += vll;
  }
  for (size_t i = 0; i < slits.size(); ++i) {
    const double l = slits[i].value();
    for (size_t j = i + 1; j < slits.size(); ++j) {
      const double m = slits[j].value();
      const double vlm = envelope(x1, l, 1, p, geom) * envelope(x1, m, 1, p, geom) *
                         envelope(x2, l, 2, p, geom) * envelope(x2, m, 2, p, geom);
      total += 2.0 * vlm * std::cos(p.beta * (l - m) * (x2 - x1 - (l + m) * p.phi));
    }
  }
  return total;
}

} // namespace

double coincidence_rate_closed_form_raw(double x1, double x2, const ExperimentGeometry& g) {
  return closed_form_impl(x1, x2, g);
}

double coincidence_rate_closed_form(double x1, double x2, const ExperimentGeometry& g) {
  return std::max(0.0, closed_form_impl(x1, x2, g));
}

double coincidence_rate_general(const QuditPureState& state, double x1, double x2,
                                const ExperimentGeometry& g) {
  const auto geom = validate(g);
  if (state.dimension != geom.dimension) {
    throw ValidationError("state dimension does not match geometry dimension");
  }
  const auto p = far_field_params(geom);
  const auto slits = slit_indices(geom.dimension);
  std::vector<std::complex<double>> k1(slits.size()), k2(slits.size());
  for (size_t i = 0; i < slits.size(); ++i) {
    k1[i] = kernel(x1, slits[i].value(), p, geom);
    k2[i] = kernel(x2, slits[i].value(), p, geom);
  }
  std::complex<double> amp{0.0, 0.0};
  for (size_t i = 0; i < slits.size(); ++i) {
    for (size_t j = 0; j < slits.size(); ++j) {
      amp += state.at(static_cast<int>(i), static_cast<int>(j)) * k1[i] * k2[j];
    }
  }
  return std::norm(amp);
}

double coincidence_rate_cc(const CorrelatedMixture& mixture, double x1, double x2,
                           const ExperimentGeometry& g) {
  const auto geom = validate(g);
  if (mixture.dimension != geom.dimension) {
    throw ValidationError("mixture dimension does not match geometry dimension");
  }
  mixture.check();
  const auto p = far_field_params(geom);
  const auto slits = slit_indices(geom.dimension);
  double total = 0.0;
  for (size_t i = 0; i < slits.size(); ++i) {
    const double l = slits[i].value();
    const double vll = envelope(x1, l, 1, p, geom) * envelope(x1, l, 1, p, geom) *
                       envelope(x2, l, 2, p, geom) * envelope(x2, l, 2, p, geom);
    total += mixture.weights[i] * static_cast<double>(geom.dimension) * vll;
  }
  return total;
}

double first_envelope_zero(const ExperimentGeometry& g) {
  const auto geom = validate(g);
  const auto p = far_field_params(geom);
  return std::numbers::pi * geom.slit_spacing / (geom.slit_half_width * std::abs(p.beta));
}

double detector_smoothed_rate(const std::function<double(double, double)>& rate, double x1,
                              double x2, const ExperimentGeometry& g, int points_per_axis) {
  if (points_per_axis < 9) throw ValidationError("window smoothing needs >= 9 points per axis");
  const double w = g.detector_slit_width;
  if (!(w > 0.0)) throw ValidationError("non-positive detector_slit_width");
  const int n = points_per_axis;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = ((i + 0.5) / n - 0.5) * w;
    for (int j = 0; j < n; ++j) {
      const double v = ((j + 0.5) / n - 0.5) * w;
      sum += rate(x1 + u, x2 + v);
    }
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n));
}

CoincidenceModel CoincidenceModel::pure(QuditPureState state, const ExperimentGeometry& g) {
  CoincidenceModel m;
  m.geom_ = validate(g);
  if (state.dimension != m.geom_.dimension) {
    throw ValidationError("state dimension does not match geometry dimension");
  }
  m.params_ = far_field_params(m.geom_);
  m.slits_ = slit_indices(m.geom_.dimension);
  m.state_ = std::move(state);
  m.lambda_ = 1.0;
  m.provenance_ = "entangled";
  return m;
}

CoincidenceModel CoincidenceModel::classical(CorrelatedMixture mixture,
                                             const ExperimentGeometry& g) {
  CoincidenceModel m;
  m.geom_ = validate(g);
  if (mixture.dimension != m.geom_.dimension) {
    throw ValidationError("mixture dimension does not match geometry dimension");
  }
  mixture.check();
  m.params_ = far_field_params(m.geom_);
  m.slits_ = slit_indices(m.geom_.dimension);
  m.mixture_ = std::move(mixture);
  m.lambda_ = 0.0;
  m.provenance_ = "classically_correlated";
  return m;
}

CoincidenceModel CoincidenceModel::interpolated(QuditPureState state, CorrelatedMixture mixture,
                                                double lambda, const ExperimentGeometry& g) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw ValidationError("interpolation weight must lie in [0, 1]");
  }
  CoincidenceModel m;
  m.geom_ = validate(g);
  if (state.dimension != m.geom_.dimension || mixture.dimension != m.geom_.dimension) {
    throw ValidationError("source dimension does not match geometry dimension");
  }
  mixture.check();
  m.params_ = far_field_params(m.geom_);
  m.slits_ = slit_indices(m.geom_.dimension);
  m.state_ = std::move(state);
  m.mixture_ = std::move(mixture);
  m.lambda_ = lambda;
  m.provenance_ = "interpolated";
  return m;
}

double CoincidenceModel::rate(double x1, double x2) const {
  const size_t n = slits_.size();
  std::vector<std::complex<double>> k1(n), k2(n);
  for (size_t i = 0; i < n; ++i) {
    k1[i] = kernel(x1, slits_[i].value(), params_, geom_);
    k2[i] = kernel(x2, slits_[i].value(), params_, geom_);
  }
  double total = 0.0;
  if (state_.dimension > 0 && lambda_ > 0.0) {
    std::complex<double> amp{0.0, 0.0};
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        amp += state_.at(static_cast<int>(i), static_cast<int>(j)) * k1[i] * k2[j];
      }
    }
    total += lambda_ * std::norm(amp);
  }
  if (mixture_.dimension > 0 && lambda_ < 1.0) {
    double cc = 0.0;
    for (size_t i = 0; i < n; ++i) {
      cc += mixture_.weights[i] * std::norm(k1[i]) * std::norm(k2[n - 1 - i]);
    }
    total += (1.0 - lambda_) * cc;
  }
  return total;
}

double CoincidenceModel::incoherent_rate(double x1, double x2) const {
  const size_t n = slits_.size();
  std::vector<double> e1(n), e2(n);
  for (size_t i = 0; i < n; ++i) {
    e1[i] = std::norm(kernel(x1, slits_[i].value(), params_, geom_));
    e2[i] = std::norm(kernel(x2, slits_[i].value(), params_, geom_));
  }
  double total = 0.0;
  if (state_.dimension > 0 && lambda_ > 0.0) {
    double diag = 0.0;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        diag += std::norm(state_.at(static_cast<int>(i), static_cast<int>(j))) * e1[i] * e2[j];
      }
    }
    total += lambda_ * diag;
  }
  if (mixture_.dimension > 0 && lambda_ < 1.0) {
    double cc = 0.0;
    for (size_t i = 0; i < n; ++i) {
      cc += mixture_.weights[i] * e1[i] * e2[n - 1 - i];
    }
    total += (1.0 - lambda_) * cc;
  }
  return total;
}

namespace {

double fringe_visibility(std::span<const double> x1, std::span<const double> rates,
                         std::span<const double> baselines, double zero_extent) {
  double base_max = 0.0;
  for (const double b : baselines) base_max = std::max(base_max, b);
  if (!(base_max > 0.0)) return 0.0;
  double gmax = 0.0, gmin = 0.0;
  bool any = false;
  for (size_t i = 0; i < x1.size(); ++i) {
    if (std::abs(x1[i]) >= zero_extent) continue;
    if (baselines[i] <= 1e-9 * base_max) continue;
    const double ratio = rates[i] / baselines[i];
    if (!any) {
      gmax = gmin = ratio;
      any = true;
    } else {
      gmax = std::max(gmax, ratio);
      gmin = std::min(gmin, ratio);
    }
  }
  if (!any || gmax + gmin <= 0.0) return 0.0;
  return (gmax - gmin) / (gmax + gmin);
}

} // namespace

FringeSlice fringe_slice(const CoincidenceModel& model, double x2, std::span<const double> x1_grid,
                         bool smoothed, int window_points) {
  if (x1_grid.empty()) throw ValidationError("empty fringe grid");
  FringeSlice slice;
  slice.x2 = x2;
  slice.x1.assign(x1_grid.begin(), x1_grid.end());
  slice.rate.resize(x1_grid.size());
  std::vector<double> baseline(x1_grid.size());
  const auto raw = [&model](double a, double b) { return model.rate(a, b); };
  const auto diag = [&model](double a, double b) { return model.incoherent_rate(a, b); };
  for (size_t i = 0; i < x1_grid.size(); ++i) {
    if (smoothed) {
      slice.rate[i] = detector_smoothed_rate(raw, x1_grid[i], x2, model.geometry(), window_points);
      baseline[i] = detector_smoothed_rate(diag, x1_grid[i], x2, model.geometry(), window_points);
    } else {
      slice.rate[i] = raw(x1_grid[i], x2);
      baseline[i] = diag(x1_grid[i], x2);
    }
  }
  slice.visibility =
      fringe_visibility(slice.x1, slice.rate, baseline, first_envelope_zero(model.geometry()));
  return slice;
}

CoincidenceMap coincidence_map(const CoincidenceModel& model, std::span<const double> x1_grid,
                               std::span<const double> x2_grid, bool smoothed,
                               int window_points) {
  if (x1_grid.empty() || x2_grid.empty()) throw ValidationError("empty map grid");
  for (size_t i = 1; i < x1_grid.size(); ++i) {
    if (!(x1_grid[i] > x1_grid[i - 1])) throw ValidationError("map grid not strictly increasing");
  }
  for (size_t j = 1; j < x2_grid.size(); ++j) {
    if (!(x2_grid[j] > x2_grid[j - 1])) throw ValidationError("map grid not strictly increasing");
  }
  CoincidenceMap map;
  map.x1.assign(x1_grid.begin(), x1_grid.end());
  map.x2.assign(x2_grid.begin(), x2_grid.end());
  map.rate.resize(x1_grid.size() * x2_grid.size());
  map.provenance = model.provenance();
  map.geometry = model.geometry();
  const auto raw = [&model](double a, double b) { return model.rate(a, b); };
  for (size_t i = 0; i < x1_grid.size(); ++i) {
    for (size_t j = 0; j < x2_grid.size(); ++j) {
      map.rate[i * x2_grid.size() + j] =
          smoothed
              ? detector_smoothed_rate(raw, x1_grid[i], x2_grid[j], model.geometry(), window_points)
              : raw(x1_grid[i], x2_grid[j]);
    }
  }
  return map;
}

std::vector<double> unit_max_normalized(std::span<const double> values) {
  double m = 0.0;
  for (const double v : values) m = std::max(m, std::abs(v));
  std::vector<double> out(values.begin(), values.end());
  if (m > 0.0) {
    for (double& v : out) v /= m;
  }
  return out;
}

} // namespace bqs
