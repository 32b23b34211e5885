#include "bqs/errors.hpp"
#include "bqs/far_field.hpp"
#include "bqs/state_prep.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace bqs;

namespace {

ExperimentGeometry bench(int dimension = 4) {
  ExperimentGeometry g;
  g.dimension = dimension;
  return validate(g);
}

// Detector plane moved off the lens transform plane (eta != 0).
ExperimentGeometry defocused_bench(int dimension = 4) {
  ExperimentGeometry g;
  g.dimension = dimension;
  g.detector_far_plane = 0.9;
  return validate(g);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  return out;
}

QuditPureState product_state(const ExperimentGeometry& g, const std::vector<double>& u,
                             const std::vector<double>& v) {
  QuditPureState s(g.dimension);
  for (int i = 0; i < g.dimension; ++i) {
    for (int j = 0; j < g.dimension; ++j) {
      s.at(i, j) = u[static_cast<size_t>(i)] * v[static_cast<size_t>(j)];
    }
  }
  return s.normalized();
}

} // namespace

TEST_CASE("far-field parameters at the bench configuration") {
  const auto g = bench();
  const auto p = far_field_params(g);

  CHECK(p.eta == 0.0); // detectors exactly one focal length behind the lens
  const double beta_expected = g.wavenumber * g.slit_spacing / g.lens_focal;
  CHECK(p.beta == doctest::Approx(beta_expected).epsilon(1e-12));
  CHECK(p.beta == doctest::Approx(8.621e3).epsilon(0.005));
  CHECK(2.0 * std::numbers::pi / p.beta == doctest::Approx(7.288e-4).epsilon(0.005));
  const double phi_expected = g.slit_spacing * g.lens_focal / (2.0 * g.z_aperture);
  CHECK(p.phi == doctest::Approx(phi_expected).epsilon(1e-12));
  CHECK(p.phi == doctest::Approx(63.75e-6).epsilon(0.005));
  CHECK(p.alpha == 0.0);
}

TEST_CASE("defocused geometry: alpha is pinned by the closed-form match") {
  const auto g = defocused_bench();
  const auto p = far_field_params(g);
  CHECK(p.eta == doctest::Approx((0.9 - 0.65 - 0.15) / 0.15).epsilon(1e-12));
  CHECK(p.eta != 0.0);
  // identity linking the kernel's quadratic phase to the closed-form phases:
  // beta*eta*d = k d^2/(2 z_A) - beta*phi
  const double gamma =
      g.wavenumber * g.slit_spacing * g.slit_spacing / (2.0 * g.z_aperture);
  CHECK(p.alpha == doctest::Approx(0.5 * (gamma - p.beta * p.phi)).epsilon(1e-12));
}

TEST_CASE("degenerate imaging configuration is reported") {
  ExperimentGeometry g;
  g.dimension = 4;
  g.lens_focal = 0.1;
  g.detector_far_plane = 1.0;
  g.lens_position = 0.85; // z - z_L - f = 0.05
  g.z_aperture = 0.7;     // z - z_A - f = 0.20, so f^2 = 0.01 = 0.05*0.20
  CHECK_THROWS_AS(far_field_params(g), NumericalError);
}

TEST_CASE("closed form at the origin") {
  SUBCASE("bench geometry: quadratic slit-pair phases detune the peak") {
    const auto g = bench();
    // independent mini-oracle: D + 2 sum cos(gamma*(l^2-m^2)) with all
    // envelopes 1 at the origin
    const double gamma =
        g.wavenumber * g.slit_spacing * g.slit_spacing / (2.0 * g.z_aperture);
    const auto slits = slit_indices(4);
    double expected = 4.0;
    for (size_t i = 0; i < slits.size(); ++i) {
      for (size_t j = i + 1; j < slits.size(); ++j) {
        const double l = slits[i].value(), m = slits[j].value();
        expected += 2.0 * std::cos(gamma * (l * l - m * m));
      }
    }
    CHECK(coincidence_rate_closed_form(0.0, 0.0, g) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected < 16.0); // strictly below the aligned-phase maximum
  }

  SUBCASE("phase-cancelling z_A makes the origin the global maximum D^2") {
    // choosing z_A = d^2/lambda turns every pair phase into a multiple of
    // 2*pi, so all cosines align
    ExperimentGeometry g;
    g.dimension = 4;
    g.z_aperture = g.slit_spacing * g.slit_spacing / g.wavelength;
    const auto v = validate(g);
    CHECK(coincidence_rate_closed_form(0.0, 0.0, v) == doctest::Approx(16.0).epsilon(1e-9));
    for (const double x : linspace(-2e-3, 2e-3, 81)) {
      CHECK(coincidence_rate_closed_form(x, 0.3 * x, v) <= 16.0 + 1e-9);
    }
  }
}

TEST_CASE("closed form is periodic under x1 -> x1 + 2*pi/beta modulo envelope") {
  const auto g = bench();
  const auto p = far_field_params(g);
  const double period = 2.0 * std::numbers::pi / p.beta;
  const double a_over_d = g.slit_half_width / g.slit_spacing;
  const auto envelope = [&](double x) {
    const double s = sinc(a_over_d * p.beta * x);
    return s * s;
  };
  for (const double x1 : {-4.1e-4, -1.3e-4, 2.2e-4, 5.07e-4}) {
    for (const double x2 : {0.0, 3e-4}) {
      const double g1 = coincidence_rate_closed_form(x1, x2, g) / envelope(x1);
      const double g2 = coincidence_rate_closed_form(x1 + period, x2, g) / envelope(x1 + period);
      CHECK(g1 == doctest::Approx(g2).epsilon(1e-9));
    }
  }
}

TEST_CASE("kernel evaluator reproduces the closed form for the ideal state") {
  for (const bool defocus : {false, true}) {
    for (const int dim : {4, 8}) {
      const auto g = defocus ? defocused_bench(dim) : bench(dim);
      const auto state = ideal_entangled_state(g);
      const auto grid = linspace(-2.5e-3, 2.5e-3, defocus ? 41 : 101);
      double max_closed = 0.0, max_general = 0.0;
      std::vector<double> closed, general;
      closed.reserve(grid.size() * grid.size());
      general.reserve(grid.size() * grid.size());
      for (const double x1 : grid) {
        for (const double x2 : grid) {
          closed.push_back(coincidence_rate_closed_form_raw(x1, x2, g));
          general.push_back(coincidence_rate_general(state, x1, x2, g));
          max_closed = std::max(max_closed, closed.back());
          max_general = std::max(max_general, general.back());
        }
      }
      REQUIRE(max_closed > 0.0);
      REQUIRE(max_general > 0.0);
      double max_diff = 0.0;
      for (size_t i = 0; i < closed.size(); ++i) {
        max_diff = std::max(max_diff,
                            std::abs(closed[i] / max_closed - general[i] / max_general));
      }
      CHECK(max_diff < 1e-9);
    }
  }
}

TEST_CASE("closed form stays nonnegative up to rounding") {
  const auto g = bench();
  const auto grid = linspace(-2.5e-3, 2.5e-3, 201);
  double min_raw = 0.0, max_raw = 0.0;
  for (const double x1 : grid) {
    for (const double x2 : {0.0, 1.5e-4, 3e-4, 1e-3}) {
      const double r = coincidence_rate_closed_form_raw(x1, x2, g);
      min_raw = std::min(min_raw, r);
      max_raw = std::max(max_raw, r);
      CHECK(coincidence_rate_closed_form(x1, x2, g) >= 0.0);
    }
  }
  CHECK(min_raw >= -1e-9 * max_raw);
}

TEST_CASE("ideal-state pattern symmetry C(x1,x2) = C(-x2,-x1)") {
  const auto g = bench();
  for (const double x1 : linspace(-2e-3, 2e-3, 21)) {
    for (const double x2 : linspace(-1e-3, 1e-3, 11)) {
      const double lhs = coincidence_rate_closed_form_raw(x1, x2, g);
      const double rhs = coincidence_rate_closed_form_raw(-x2, -x1, g);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("product states factorize and single pairs show no fringes") {
  const auto g = bench();

  SUBCASE("factorization identity") {
    const auto s = product_state(g, {1.0, 2.0, 1.0, 0.5}, {0.5, 1.0, 2.0, 1.0});
    const double x1a = 1.1e-4, x1b = -3.3e-4, x2a = 0.4e-4, x2b = 2.9e-4;
    const double lhs = coincidence_rate_general(s, x1a, x2a, g) *
                       coincidence_rate_general(s, x1b, x2b, g);
    const double rhs = coincidence_rate_general(s, x1a, x2b, g) *
                       coincidence_rate_general(s, x1b, x2a, g);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }

  SUBCASE("single transmitted pair: pure envelopes") {
    QuditPureState s(4);
    s.at(SlitIndex{-3}, SlitIndex{1}) = 1.0;
    const auto model = CoincidenceModel::pure(s, g);
    const auto slice = fringe_slice(model, 0.0, linspace(-2.5e-3, 2.5e-3, 501));
    CHECK(slice.visibility < 1e-12);
  }
}

TEST_CASE("classically correlated source") {
  const auto g = bench();
  const auto cc = classically_correlated_state(g);

  SUBCASE("origin rate D vs the entangled peak scale D^2") {
    CHECK(coincidence_rate_cc(cc, 0.0, 0.0, g) == doctest::Approx(4.0).epsilon(1e-12));
    // with the pair phases cancelled the coherent peak is D^2: ratio D
    ExperimentGeometry cancel;
    cancel.dimension = 4;
    cancel.z_aperture = cancel.slit_spacing * cancel.slit_spacing / cancel.wavelength;
    const auto v = validate(cancel);
    const double ratio = coincidence_rate_closed_form(0.0, 0.0, v) /
                         coincidence_rate_cc(classically_correlated_state(v), 0.0, 0.0, v);
    CHECK(ratio == doctest::Approx(4.0).epsilon(1e-9));
  }

  SUBCASE("uniform mixture equals the diagonal part of the closed form") {
    const auto state = ideal_entangled_state(g);
    const auto model = CoincidenceModel::pure(state, g);
    for (const double x1 : {-7.7e-4, 1.2e-4, 9.6e-4}) {
      for (const double x2 : {0.0, 3e-4}) {
        // cc rate (spec scale) = D * incoherent part of the normalized state
        CHECK(coincidence_rate_cc(cc, x1, x2, g) ==
              doctest::Approx(4.0 * model.incoherent_rate(x1, x2)).epsilon(1e-12));
      }
    }
  }

  SUBCASE("zero visibility at any fixed detector position") {
    const auto model = CoincidenceModel::classical(cc, g);
    for (const double x2 : {0.0, 3e-4, -2.4e-4}) {
      const auto slice = fringe_slice(model, x2, linspace(-2.5e-3, 2.5e-3, 501));
      CHECK(slice.visibility <= 1e-12);
    }
  }
}

TEST_CASE("conditional fringes: slices at different x2 differ strongly") {
  const auto g = bench();
  const auto model = CoincidenceModel::pure(ideal_entangled_state(g), g);
  const auto grid = linspace(-2.5e-3, 2.5e-3, 501);
  const auto s0 = fringe_slice(model, 0.0, grid);
  const auto s3 = fringe_slice(model, 3e-4, grid);
  CHECK(s0.visibility > 0.95);
  CHECK(s3.visibility > 0.95);
  const auto n0 = unit_max_normalized(s0.rate);
  const auto n3 = unit_max_normalized(s3.rate);
  double linf = 0.0;
  for (size_t i = 0; i < n0.size(); ++i) linf = std::max(linf, std::abs(n0[i] - n3[i]));
  CHECK(linf > 0.2);
}

TEST_CASE("interpolated model mixes rates convexly") {
  const auto g = bench();
  const auto state = ideal_entangled_state(g);
  const auto cc = classically_correlated_state(g);
  const auto mixed = CoincidenceModel::interpolated(state, cc, 0.3, g);
  const auto pure = CoincidenceModel::pure(state, g);
  const auto classical = CoincidenceModel::classical(cc, g);
  for (const double x1 : {-5e-4, 1e-4, 8e-4}) {
    for (const double x2 : {0.0, 3e-4}) {
      CHECK(mixed.rate(x1, x2) ==
            doctest::Approx(0.3 * pure.rate(x1, x2) + 0.7 * classical.rate(x1, x2))
                .epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(CoincidenceModel::interpolated(state, cc, 1.5, g), ValidationError);
}

TEST_CASE("detector window smoothing") {
  const auto g2 = bench(2);
  const auto p = far_field_params(g2);
  const auto model = CoincidenceModel::pure(ideal_entangled_state(g2), g2);
  const auto grid = linspace(-2.5e-3, 2.5e-3, 501);

  SUBCASE("vanishing window recovers the raw rate") {
    auto tiny = g2;
    tiny.detector_slit_width = 1e-12;
    const auto raw = [&](double a, double b) { return model.rate(a, b); };
    for (const double x : {-4e-4, 0.0, 6.5e-4}) {
      CHECK(detector_smoothed_rate(raw, x, 0.0, tiny) ==
            doctest::Approx(model.rate(x, 0.0)).epsilon(1e-9));
    }
  }

  SUBCASE("two-slit fringe contrast drops by the window factor per detector") {
    const double factor = sinc(0.5 * p.beta * g2.detector_slit_width);
    CHECK(factor == doctest::Approx(0.96932).epsilon(1e-4)); // 0.1 mm window vs 0.729 mm period
    const auto raw = fringe_slice(model, 0.0, grid, false);
    const auto smoothed = fringe_slice(model, 0.0, grid, true, 33);
    CHECK(raw.visibility > 0.999);
    // both windows act on the cosine: the slice visibility drops by factor^2
    CHECK(smoothed.visibility == doctest::Approx(factor * factor).epsilon(5e-3));
  }

  SUBCASE("window equal to the fringe period wipes out the fringes") {
    auto wide = g2;
    wide.detector_slit_width = 2.0 * std::numbers::pi / p.beta;
    const auto model_wide = CoincidenceModel::pure(ideal_entangled_state(wide), wide);
    const auto smoothed = fringe_slice(model_wide, 0.0, grid, true, 33);
    // the cosine averages out; what remains is curvature of the envelope
    // across the window (~0.025 at this geometry)
    CHECK(smoothed.visibility < 0.03);
  }
}

TEST_CASE("map evaluation and input validation") {
  const auto g = bench();
  const auto model = CoincidenceModel::pure(ideal_entangled_state(g), g);
  const auto grid = linspace(-1e-3, 1e-3, 21);
  const auto map = coincidence_map(model, grid, grid);
  CHECK(map.provenance == "entangled");
  CHECK(map.rate.size() == 441);
  double best = 0.0;
  for (const double r : map.rate) {
    CHECK(r >= 0.0);
    best = std::max(best, r);
  }
  CHECK(best > 0.0);

  std::vector<double> bad = {0.0, -1e-4, 1e-4};
  CHECK_THROWS_AS(coincidence_map(model, bad, grid), ValidationError);

  QuditPureState wrong(3);
  wrong.at(0, 0) = 1.0;
  CHECK_THROWS_AS(coincidence_rate_general(wrong, 0.0, 0.0, g), ValidationError);
}
