#pragma once

#include "bqs/far_field.hpp"
#include "bqs/states.hpp"

#include <optional>
#include <vector>

namespace bqs {

/// Two-qudit density operator. The D^2 x D^2 matrix is stored row-major in
/// the product basis (l1, l2), both labels ascending as in slit_indices, l2
/// fastest: index = i1 * D + i2.
struct DensityOperator {
  int dimension = 0;               ///< single-qudit dimension D
  std::vector<Complex> elements;   ///< D^2 x D^2, row-major

  explicit DensityOperator(int dim = 0)
      : dimension(dim),
        elements(static_cast<size_t>(dim) * dim * dim * dim) {}

  int size() const { return dimension * dimension; }

  Complex& at(int row, int col) {
    return elements[static_cast<size_t>(row) * static_cast<size_t>(size()) +
                    static_cast<size_t>(col)];
  }
  const Complex& at(int row, int col) const {
    return elements[static_cast<size_t>(row) * static_cast<size_t>(size()) +
                    static_cast<size_t>(col)];
  }

  /// Hermiticity to 1e-10, unit trace to 1e-10, eigenvalues >= -1e-9.
  /// Throws ValidationError naming the violated property.
  void check() const;
};

DensityOperator to_density(const QuditPureState& state);
DensityOperator to_density(const CorrelatedMixture& mixture);

/// lambda * |psi><psi| + (1 - lambda) * rho_cc.
DensityOperator interpolate_density(const QuditPureState& state, const CorrelatedMixture& mixture,
                                    double lambda);

/// Transpose of the second subsystem's indices.
DensityOperator partial_transpose(const DensityOperator& rho);

/// Singular values of the amplitude matrix, descending. Their squares sum to
/// the squared state norm.
std::vector<double> schmidt_spectrum(const QuditPureState& state);

/// Entropy of entanglement in bits: -sum s^2 log2 s^2 over the Schmidt
/// coefficients. Requires a normalized state (ValidationError otherwise).
double entanglement_entropy(const QuditPureState& state);

/// Sum of |negative eigenvalues| of the partial transpose over subsystem 2.
/// (The value is the same for either subsystem.)
double negativity(const DensityOperator& rho);

/// Tr(rho^2).
double purity(const DensityOperator& rho);

struct WitnessThresholds {
  double score = 0.05;      ///< minimum L-inf distance between normalized slices
  double visibility = 0.1;  ///< minimum fringe visibility of every slice
};

struct WitnessResult {
  double score = 0.0;                 ///< max pairwise L-inf distance
  std::vector<double> visibilities;   ///< per input slice
  bool entangled_signature = false;
};

/// Conditional-fringe discrimination: fringes whose shape depends on the
/// fixed detector's position. Slices are normalized to unit maximum; the
/// score is the largest pairwise L-inf distance. The verdict is
/// entangled-signature iff score > thresholds.score and every slice's
/// visibility exceeds thresholds.visibility. Requires >= 2 slices on
/// identical x1 grids.
WitnessResult conditionality_witness(std::span<const FringeSlice> slices,
                                     const WitnessThresholds& thresholds = {});

/// Bundle of the scalar diagnostics for one state or mixture.
struct DiagnosticsReport {
  std::vector<double> schmidt;
  std::optional<double> entropy_bits; ///< pure states only
  double negativity = 0.0;
  double purity = 0.0;
  std::optional<WitnessResult> witness;
};

} // namespace bqs
