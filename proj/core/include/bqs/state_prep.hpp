#pragma once

#include "bqs/geometry.hpp"
#include "bqs/states.hpp"

namespace bqs {

/// Transmission of the D-slit aperture at transverse position x: 1 inside a
/// slit (|x - l*d| <= a for some slit l), else 0.
double aperture_transmission(double x, const ExperimentGeometry& g);

/// Overlap of the slit modes for a center-to-center separation delta and
/// slit half-width a. Closed form: the unit triangle function of
/// delta/(2a), so exactly delta_{l,l'} whenever the slits are disjoint.
double mode_overlap_delta(double delta, double slit_half_width);

/// Overlap <l|l2> of the slit modes of one aperture.
double mode_overlap(SlitIndex l, SlitIndex l2, const ExperimentGeometry& g);

/// The analytic anti-correlated state reached in the narrow-pump limit:
/// c[l][-l] = exp(i k d^2 l^2 / (2 z_A)) / sqrt(D), all other entries zero.
/// The phase of each term is the optical path difference from the source to
/// the corresponding slit pair.
QuditPureState ideal_entangled_state(const ExperimentGeometry& g);

/// Equal-weight classical mixture of the same slit pairs: p_l = 1/D.
CorrelatedMixture classically_correlated_state(const ExperimentGeometry& g);

/// Controls for the two-photon projection integrals.
struct QuadratureSpec {
  int base_order = 32;    ///< Gauss-Legendre points per axis per slit-pair cell
  double rel_tol = 1e-8;  ///< convergence target of the order-doubling check
  int max_order = 2048;   ///< give up (NumericalError) beyond this order
};

/// Projects the aperture-transmitted two-photon amplitude onto the product
/// slit-mode basis under a given pump profile:
///
///   c[l1][l2] ~ integral over slit l1 (x1) and slit l2 (x2) of
///               exp(i k (x2-x1)^2 / (8 z_A)) * W((x1+x2)/2) dx1 dx2,
///
/// normalized to unit Frobenius norm. Each cell uses tensor Gauss-Legendre
/// quadrature; the order is doubled until the result is stable to
/// spec.rel_tol. Throws NumericalError if the doubling check fails or the
/// pump has no support over any slit pair.
QuditPureState project_biphoton(const ExperimentGeometry& g, const PumpProfile& pump,
                                const QuadratureSpec& spec = {});

} // namespace bqs
