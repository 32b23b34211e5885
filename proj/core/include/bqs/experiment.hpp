#pragma once

#include "bqs/geometry.hpp"
#include "bqs/states.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace bqs {

/// One near-field scan: detector D1 parked behind a fixed slit, detector D2
/// stepped across the opposite aperture, singles and coincidences counted at
/// each position.
struct ScanRecord {
  SlitIndex fixed_slit;
  std::vector<double> positions;           ///< D2 window centers (m)
  std::vector<std::uint64_t> singles;      ///< D2 single counts per point
  std::vector<std::uint64_t> coincidences; ///< D1-D2 coincidences per point
  double acquisition = 1.0;                ///< seconds per point
  std::uint64_t seed = 0;
  double mean_pair_flux = 0.0;             ///< detected pairs/s at full overlap
};

/// Expected (noise-free) rates behind the aperture in the geometric-shadow
/// model: detectors sit so close to the slits that no diffraction develops,
/// so a detector window simply collects the fraction of each slit's flux it
/// covers.
struct ScanRates {
  std::vector<double> singles;      ///< per second
  std::vector<double> coincidences; ///< per second
};

/// Fraction of the flux through slit l that a detector window centered at x
/// collects: |window  intersect  slit| / (2a).
double window_overlap_fraction(double x_center, SlitIndex slit, const ExperimentGeometry& g);

/// Expected rates for a scan with D1 fixed behind fixed_slit:
///   coincidence(x) = flux * sum_l' |c[fixed][l']|^2 * overlap(x, l')
///   singles(x)     = flux * sum_{l1,l'} |c[l1][l']|^2 * overlap(x, l')
ScanRates expected_scan_rates(const QuditPureState& state, SlitIndex fixed_slit,
                              std::span<const double> positions, double flux,
                              const ExperimentGeometry& g);

/// Draws one ScanRecord: counts are independent Poisson variates with mean
/// rate * acquisition, from a stream derived from (seed, fixed_slit).
/// Identical inputs give bit-identical records.
ScanRecord near_field_scan(const QuditPureState& state, SlitIndex fixed_slit,
                           std::span<const double> positions, double flux, double acquisition,
                           std::uint64_t seed, const ExperimentGeometry& g);

/// Uniformly spaced D2 positions covering all slits plus half a period of
/// margin, symmetric about the aperture center.
std::vector<double> default_scan_grid(const ExperimentGeometry& g, double step);

/// True when the grid spans every slit of the aperture.
bool scan_grid_covers_aperture(std::span<const double> positions, const ExperimentGeometry& g);

/// Normalized slit-pair probabilities with Poisson standard errors.
struct ProbabilityTable {
  int dimension = 0;
  std::vector<double> probability; // row-major D x D, ordered like slit_indices
  std::vector<double> std_err;

  double at(int i1, int i2) const {
    return probability[static_cast<size_t>(i1) * static_cast<size_t>(dimension) +
                       static_cast<size_t>(i2)];
  }
};

/// Bins each record by nearest slit (window center within +-a of a slit
/// center; dead-zone points are discarded), sums coincidences into C[l1][l2]
/// and normalizes: P = C / sum C, std_err = sqrt(C) / sum C. Requires exactly
/// one record per fixed slit. Throws ValidationError on duplicated or missing
/// fixed slits and on an all-zero table.
ProbabilityTable probability_table(std::span<const ScanRecord> records,
                                   const ExperimentGeometry& g);

/// The table the scan protocol would produce with noise-free counting:
/// expected coincidence rates binned and normalized exactly like
/// probability_table.
ProbabilityTable ideal_probability_table(const QuditPureState& state,
                                         std::span<const double> positions,
                                         const ExperimentGeometry& g);

/// State implied by a measured table under the convention that magnitudes
/// come from the data (|c| = sqrt(P)) and phases from theory: the quadratic
/// slit-pair phase on the anti-diagonal, zero elsewhere. Deliberately NOT
/// renormalized: the result carries the norm of the (rounded) measured
/// amplitudes, which is what enters the reported fidelity.
QuditPureState reconstruct_state(const ProbabilityTable& table, const ExperimentGeometry& g);

/// Overlap fidelity |<reference_normalized | candidate>|^2. The reference is
/// normalized; the candidate enters as-is, matching how reported fidelities
/// are computed from rounded measured amplitudes. Set renormalize_candidate
/// to compare unit vectors instead.
double fidelity(const QuditPureState& candidate, const QuditPureState& reference,
                bool renormalize_candidate = false);

} // namespace bqs
