#include "bqs/state_prep.hpp"

#include "bqs/errors.hpp"
#include "bqs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bqs {

Complex& QuditPureState::at(SlitIndex l1, SlitIndex l2) {
  return const_cast<Complex&>(std::as_const(*this).at(l1, l2));
}

const Complex& QuditPureState::at(SlitIndex l1, SlitIndex l2) const {
  if (!l1.valid_for(dimension) || !l2.valid_for(dimension)) {
    throw ValidationError("slit label invalid for dimension " + std::to_string(dimension));
  }
  const int span = dimension - 1;
  const int i1 = (l1.twice_l + span) / 2;
  const int i2 = (l2.twice_l + span) / 2;
  return at(i1, i2);
}

double QuditPureState::norm() const {
  double s = 0.0;
  for (const auto& c : amplitudes) s += std::norm(c);
  return std::sqrt(s);
}

bool QuditPureState::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

QuditPureState QuditPureState::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw NumericalError("cannot normalize the zero state");
  QuditPureState out = *this;
  for (auto& c : out.amplitudes) c /= n;
  return out;
}

void CorrelatedMixture::check() const {
  if (static_cast<int>(weights.size()) != dimension) {
    throw ValidationError("mixture weight count does not match dimension");
  }
  double sum = 0.0;
  for (const double p : weights) {
    if (p < 0.0) throw ValidationError("negative mixture weight");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("mixture weights do not sum to 1");
  }
}

PumpProfile PumpProfile::gaussian_beam(double waist, double center) {
  if (!(waist > 0.0)) throw ValidationError("non-positive pump waist");
  PumpProfile p;
  p.shape = Shape::gaussian;
  p.waist = waist;
  p.center = center;
  return p;
}

PumpProfile PumpProfile::tabulated(std::vector<std::pair<double, Complex>> samples) {
  if (samples.size() < 2) throw ValidationError("tabulated pump needs at least two samples");
  if (!std::is_sorted(samples.begin(), samples.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; })) {
    throw ValidationError("tabulated pump samples not ordered by position");
  }
  PumpProfile p;
  p.shape = Shape::tabulated;
  p.samples = std::move(samples);
  return p;
}

Complex PumpProfile::amplitude(double xi) const {
  if (shape == Shape::gaussian) {
    const double t = (xi - center) / waist;
    return Complex{std::exp(-t * t), 0.0};
  }
  if (xi < samples.front().first || xi > samples.back().first) return {0.0, 0.0};
  auto hi = std::lower_bound(samples.begin(), samples.end(), xi,
                             [](const auto& s, double v) { return s.first < v; });
  if (hi == samples.begin()) return hi->second;
  const auto lo = hi - 1;
  const double span = hi->first - lo->first;
  if (span <= 0.0) return lo->second;
  const double t = (xi - lo->first) / span;
  return lo->second * (1.0 - t) + hi->second * t;
}

double aperture_transmission(double x, const ExperimentGeometry& g) {
  return nearest_slit(x, g) ? 1.0 : 0.0;
}

double mode_overlap_delta(double delta, double slit_half_width) {
  const double t = std::abs(delta) / (2.0 * slit_half_width);
  return std::max(0.0, 1.0 - t);
}

double mode_overlap(SlitIndex l, SlitIndex l2, const ExperimentGeometry& g) {
  const double delta = (l.value() - l2.value()) * g.slit_spacing;
  return mode_overlap_delta(delta, g.slit_half_width);
}

QuditPureState ideal_entangled_state(const ExperimentGeometry& g) {
  const auto geom = validate(g);
  const auto slits = slit_indices(geom.dimension);
  QuditPureState state(geom.dimension);
  const double scale = 1.0 / std::sqrt(static_cast<double>(geom.dimension));
  const double chirp =
      geom.wavenumber * geom.slit_spacing * geom.slit_spacing / (2.0 * geom.z_aperture);
  for (const auto l : slits) {
    const double ll = l.value() * l.value();
    state.at(l, SlitIndex{-l.twice_l}) = std::polar(scale, chirp * ll);
  }
  return state;
}

CorrelatedMixture classically_correlated_state(const ExperimentGeometry& g) {
  const auto geom = validate(g);
  CorrelatedMixture m;
  m.dimension = geom.dimension;
  m.weights.assign(static_cast<size_t>(geom.dimension),
                   1.0 / static_cast<double>(geom.dimension));
  return m;
}

namespace {

// Upper bound on |W| anywhere; bounds the magnitude any cell can reach.
double pump_amplitude_bound(const PumpProfile& pump) {
  if (pump.shape == PumpProfile::Shape::gaussian) return 1.0;
  double m = 0.0;
  for (const auto& [pos, amp] : pump.samples) m = std::max(m, std::abs(amp));
  return m;
}

// One slit-pair cell of the projection integral at a fixed tensor order.
Complex cell_integral(const ExperimentGeometry& g, const PumpProfile& pump, double center1,
                      double center2, int order) {
  const auto& [nodes, weights] = gauss_legendre(order);
  const double a = g.slit_half_width;
  const double chirp = g.wavenumber / (8.0 * g.z_aperture);
  Complex sum{0.0, 0.0};
  for (size_t i = 0; i < nodes.size(); ++i) {
    const double x1 = center1 + a * nodes[i];
    for (size_t j = 0; j < nodes.size(); ++j) {
      const double x2 = center2 + a * nodes[j];
      const double diff = x2 - x1;
      const Complex phase = std::polar(1.0, chirp * diff * diff);
      sum += weights[i] * weights[j] * phase * pump.amplitude(0.5 * (x1 + x2));
    }
  }
  return sum * (a * a);
}

} // namespace

QuditPureState project_biphoton(const ExperimentGeometry& g, const PumpProfile& pump,
                                const QuadratureSpec& spec) {
  const auto geom = validate(g);
  if (spec.base_order < 2 || !(spec.rel_tol > 0.0) || spec.max_order < 2 * spec.base_order) {
    throw ValidationError("quadrature spec requires base_order >= 2, rel_tol > 0 and "
                          "max_order >= 2*base_order");
  }
  const auto slits = slit_indices(geom.dimension);
  const int dim = geom.dimension;

  // Cells where the pump has no support integrate to ~0; their doubling
  // residual is compared against a bound on the largest reachable cell so
  // they converge immediately instead of chasing rounding noise.
  const double cell_bound = 4.0 * geom.slit_half_width * geom.slit_half_width *
                            pump_amplitude_bound(pump);
  const double abs_tol = spec.rel_tol * cell_bound;

  QuditPureState raw(dim);
  for (int i1 = 0; i1 < dim; ++i1) {
    const double c1 = slit_position(slits[static_cast<size_t>(i1)], geom);
    for (int i2 = 0; i2 < dim; ++i2) {
      const double c2 = slit_position(slits[static_cast<size_t>(i2)], geom);
      int order = spec.base_order;
      Complex coarse = cell_integral(geom, pump, c1, c2, order);
      Complex fine = coarse;
      bool converged = false;
      double resid = 0.0;
      while (2 * order <= spec.max_order) {
        order *= 2;
        fine = cell_integral(geom, pump, c1, c2, order);
        resid = std::abs(fine - coarse);
        if (resid <= std::max(spec.rel_tol * std::abs(fine), abs_tol)) {
          converged = true;
          break;
        }
        coarse = fine;
      }
      if (!converged) {
        std::ostringstream msg;
        msg << "projection quadrature did not converge for slit pair ("
            << slits[static_cast<size_t>(i1)].label() << ", "
            << slits[static_cast<size_t>(i2)].label() << "): achieved relative error "
            << resid / std::max(std::abs(fine), 1e-300) << " at order " << order
            << " (target " << spec.rel_tol << ")";
        throw NumericalError(msg.str());
      }
      raw.at(i1, i2) = fine;
    }
  }

  const double n = raw.norm();
  if (!(n > abs_tol)) {
    throw NumericalError("pump profile has no support over any slit pair");
  }
  for (auto& c : raw.amplitudes) c /= n;
  return raw;
}

} // namespace bqs
