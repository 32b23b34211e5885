#pragma once

#include "bqs/geometry.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace bqs {

using Complex = std::complex<double>;

/// Pure two-qudit state in the slit-mode basis: a DxD matrix of amplitudes
/// c[l1][l2], row/column indexed by the ascending slit labels of
/// slit_indices(D). States produced by the preparation routines are
/// normalized; states loaded from measured amplitude tables may not be
/// (see fidelity()).
struct QuditPureState {
  int dimension = 0;
  std::vector<Complex> amplitudes; // row-major, dimension*dimension entries

  QuditPureState() = default;
  explicit QuditPureState(int dim)
      : dimension(dim), amplitudes(static_cast<size_t>(dim) * static_cast<size_t>(dim)) {}

  Complex& at(int i1, int i2) {
    return amplitudes[static_cast<size_t>(i1) * static_cast<size_t>(dimension) +
                      static_cast<size_t>(i2)];
  }
  const Complex& at(int i1, int i2) const {
    return amplitudes[static_cast<size_t>(i1) * static_cast<size_t>(dimension) +
                      static_cast<size_t>(i2)];
  }

  /// Access by slit label; the label must be valid for this dimension.
  Complex& at(SlitIndex l1, SlitIndex l2);
  const Complex& at(SlitIndex l1, SlitIndex l2) const;

  /// Frobenius norm of the amplitude matrix.
  double norm() const;

  /// True iff |norm - 1| <= tol.
  bool is_normalized(double tol = 1e-10) const;

  /// Unit-norm copy. Throws NumericalError for the zero state.
  QuditPureState normalized() const;
};

/// Diagonal classical mixture of the products |l> |-l> with weights p_l,
/// ordered like slit_indices(D).
struct CorrelatedMixture {
  int dimension = 0;
  std::vector<double> weights;

  /// Checks p_l >= 0 and sum = 1 within 1e-12; throws ValidationError.
  void check() const;
};

/// Transverse field profile of the pump beam in the aperture plane.
struct PumpProfile {
  enum class Shape { gaussian, tabulated };

  Shape shape = Shape::gaussian;
  double waist = 4.5e-6;  ///< 1/e half-width of the gaussian amplitude
  double center = 0.0;
  /// (position, complex amplitude) samples for Shape::tabulated, ascending
  /// in position; linearly interpolated, zero outside the sampled range.
  std::vector<std::pair<double, Complex>> samples;

  static PumpProfile gaussian_beam(double waist, double center = 0.0);
  static PumpProfile tabulated(std::vector<std::pair<double, Complex>> samples);

  /// Field amplitude at transverse position xi.
  Complex amplitude(double xi) const;
};

} // namespace bqs
