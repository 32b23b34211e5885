#pragma once

#include "bqs/geometry.hpp"
#include "bqs/states.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bqs {

/// Derived constants of the lens/far-field configuration.
struct FarFieldParams {
  double beta = 0.0;  ///< fringe wavenumber: k*f*d / [f^2 - (z-z_L-f)(z-z_A-f)]
  double phi = 0.0;   ///< pair-offset length: d*[f^2 - (z-z_L-f)(z+z_A-f)] / (2*f*z_A)
  double eta = 0.0;   ///< defocus ratio: (z-z_L-f)/f
  double alpha = 0.0; ///< per-slit quadratic detection phase: beta*eta*d/2
};

/// Computes beta, phi, eta (and the derived per-slit quadratic phase alpha).
/// Throws NumericalError when the imaging denominator f^2-(z-z_L-f)(z-z_A-f)
/// vanishes (degenerate configuration).
FarFieldParams far_field_params(const ExperimentGeometry& g);

/// sin(x)/x with the removable singularity filled in.
double sinc(double x);

/// Coincidence rate of the ideal anti-correlated state in closed form:
/// the diagonal envelope sum plus pairwise cosine fringes
///   sum_l V_ll + 2 sum_{l<m} V_lm cos(beta (l-m) [x2 - x1 - (l+m) phi]),
/// with V_lm the product of the four single-slit diffraction envelopes.
/// Arbitrary units. Clamped at zero; the unclamped value is available for
/// positivity checks via coincidence_rate_closed_form_raw.
double coincidence_rate_closed_form(double x1, double x2, const ExperimentGeometry& g);
double coincidence_rate_closed_form_raw(double x1, double x2, const ExperimentGeometry& g);

/// Coincidence rate of an arbitrary pure two-qudit state, evaluated as the
/// squared modulus of the kernel sum  sum c[l1][l2] K(x1,l1) K(x2,l2)  with
///   K(x,s) = sinc(a*beta*(x + s*eta*d)/d) * exp(-i*(beta*s*x + alpha*s^2)).
/// The quadratic phase alpha is pinned by exact agreement with the closed
/// form for the ideal state (verified in the test suite at eta = 0 and
/// eta != 0). Throws ValidationError on dimension mismatch.
double coincidence_rate_general(const QuditPureState& state, double x1, double x2,
                                const ExperimentGeometry& g);

/// Coincidence rate of a diagonal classical mixture: D * sum_l p_l * V_ll.
/// The D factor makes the uniform mixture coincide with the diagonal sum of
/// the closed form above (no fringes, envelope only).
double coincidence_rate_cc(const CorrelatedMixture& mixture, double x1, double x2,
                           const ExperimentGeometry& g);

/// |x1| below which the central diffraction envelope extends: pi*d/(a*beta).
double first_envelope_zero(const ExperimentGeometry& g);

/// Averages a rate function over a square detector window (detector slit
/// width in each coordinate), midpoint-sampled. points_per_axis >= 9.
double detector_smoothed_rate(const std::function<double(double, double)>& rate, double x1,
                              double x2, const ExperimentGeometry& g, int points_per_axis = 17);

/// Uniform rate interface over the supported source kinds: a pure state, a
/// classical mixture, or their convex interpolation  lambda*pure +
/// (1-lambda)*mixture  (rates mix convexly because the rate is linear in the
/// density operator). Rates here carry the physical normalization of the
/// state/mixture, so the interpolation weights are meaningful.
class CoincidenceModel {
public:
  static CoincidenceModel pure(QuditPureState state, const ExperimentGeometry& g);
  static CoincidenceModel classical(CorrelatedMixture mixture, const ExperimentGeometry& g);
  static CoincidenceModel interpolated(QuditPureState state, CorrelatedMixture mixture,
                                       double lambda, const ExperimentGeometry& g);

  /// Fourth-order coincidence rate at detector positions (x1, x2).
  double rate(double x1, double x2) const;

  /// Same with all interference cross terms dropped: the single-slit
  /// diffraction background used as the fringe-visibility baseline.
  double incoherent_rate(double x1, double x2) const;

  const ExperimentGeometry& geometry() const { return geom_; }
  const FarFieldParams& params() const { return params_; }
  const std::string& provenance() const { return provenance_; }

private:
  CoincidenceModel() = default;

  ExperimentGeometry geom_;
  FarFieldParams params_;
  std::vector<SlitIndex> slits_;
  QuditPureState state_;       // dimension 0 when absent
  CorrelatedMixture mixture_;  // dimension 0 when absent
  double lambda_ = 1.0;
  std::string provenance_;
};

/// One horizontal cut through the coincidence pattern: D2 fixed at x2, D1
/// scanned over x1. The visibility is the fringe contrast (max-min)/(max+min)
/// of the rate divided by the incoherent baseline, taken over the central
/// envelope (|x1| below the first envelope zero); a fringe-free pattern has
/// visibility 0 regardless of the envelope shape.
struct FringeSlice {
  double x2 = 0.0;
  std::vector<double> x1;
  std::vector<double> rate;
  double visibility = 0.0;
};

FringeSlice fringe_slice(const CoincidenceModel& model, double x2, std::span<const double> x1_grid,
                         bool smoothed = false, int window_points = 17);

/// Sampled coincidence rate over a detector position grid.
struct CoincidenceMap {
  std::vector<double> x1;
  std::vector<double> x2;
  std::vector<double> rate; // row-major: rate[i*x2.size() + j] at (x1[i], x2[j])
  std::string provenance;
  ExperimentGeometry geometry;
};

CoincidenceMap coincidence_map(const CoincidenceModel& model, std::span<const double> x1_grid,
                               std::span<const double> x2_grid, bool smoothed = false,
                               int window_points = 17);

/// Scales a sampled curve to unit maximum (no-op on all-zero input).
std::vector<double> unit_max_normalized(std::span<const double> values);

} // namespace bqs
