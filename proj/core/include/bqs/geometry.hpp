#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bqs {

/// Label of one slit of a D-slit aperture. Slit l sits at position l*d,
/// where l runs from -(D-1)/2 to +(D-1)/2 in steps of 1 and is therefore a
/// half-integer when D is even. The label is stored doubled (twice_l = 2l)
/// so slit identity is exact integer arithmetic.
struct SlitIndex {
  int twice_l = 0;

  constexpr double value() const { return 0.5 * static_cast<double>(twice_l); }
  constexpr bool operator==(const SlitIndex&) const = default;
  constexpr auto operator<=>(const SlitIndex&) const = default;

  /// True iff this label exists in a D-slit aperture (parity and range).
  constexpr bool valid_for(int dimension) const {
    if (dimension < 2) return false;
    const int span = dimension - 1;
    const bool parity_ok = ((twice_l % 2 + 2) % 2) == (span % 2);
    return parity_ok && twice_l >= -span && twice_l <= span;
  }

  /// Human-readable form: "+3/2", "-1/2", "0", "+1", ...
  std::string label() const;
};

/// Parses labels like "+3/2", "-1/2", "3/2", "0", "-2". Returns nullopt on
/// malformed input.
std::optional<SlitIndex> parse_slit_label(const std::string& text);

/// The D slit labels in ascending order. Throws ValidationError for D < 2.
std::vector<SlitIndex> slit_indices(int dimension);

/// Physical parameters of the source + aperture + detection setup.
/// All lengths in meters. Defaults are the reference bench configuration:
/// degenerate wavelength 826 nm, apertures at 200 mm from the crystal,
/// slit width 0.09 mm, spacing 0.17 mm, 0.1 mm detector slits, near-field
/// detectors ~2 mm behind the apertures, far-field lenses f = 150 mm at
/// 650 mm with detectors at 800 mm.
struct ExperimentGeometry {
  double wavelength = 826e-9;        ///< down-converted degenerate wavelength
  double wavenumber = 0.0;           ///< 2*pi/wavelength; filled by validate()
  int dimension = 4;                 ///< number of slits D per aperture
  double slit_half_width = 4.5e-5;   ///< a
  double slit_spacing = 1.7e-4;      ///< d, center to center
  double z_aperture = 0.2;           ///< crystal -> aperture plane
  double detector_near_offset = 2e-3;   ///< aperture -> detector, near-field scans
  double detector_slit_width = 1e-4;    ///< single slit in front of each detector
  double lens_focal = 0.15;          ///< f
  double lens_position = 0.65;       ///< crystal -> lens
  double detector_far_plane = 0.8;   ///< crystal -> detector plane, far field
};

/// Every violated invariant, one message each; empty means valid.
std::vector<std::string> validation_errors(const ExperimentGeometry& g);

/// Returns a copy with the cached wavenumber filled in, or throws
/// ValidationError listing all violations. An explicitly set wavenumber is
/// accepted only if it equals 2*pi/wavelength to 1e-12 relative; the
/// wavenumber convention is changed by changing the wavelength.
ExperimentGeometry validate(const ExperimentGeometry& g);

/// Center position of slit l: l*d.
double slit_position(SlitIndex l, const ExperimentGeometry& g);

/// Inverse of slit_position for points within +-a of a slit center;
/// nullopt in the opaque regions between and outside the slits.
std::optional<SlitIndex> nearest_slit(double x, const ExperimentGeometry& g);

} // namespace bqs
