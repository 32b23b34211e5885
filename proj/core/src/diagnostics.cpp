#include "bqs/diagnostics.hpp"

#include "bqs/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace bqs {

namespace {

using Matrix = Eigen::MatrixXcd;

Matrix as_eigen(const DensityOperator& rho) {
  const int n = rho.size();
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = rho.at(r, c);
  }
  return m;
}

} // namespace

void DensityOperator::check() const {
  const int n = size();
  if (n == 0 || static_cast<size_t>(n) * static_cast<size_t>(n) != elements.size()) {
    throw ValidationError("density operator storage size mismatch");
  }
  double trace = 0.0;
  for (int r = 0; r < n; ++r) {
    trace += at(r, r).real();
    if (std::abs(at(r, r).imag()) > 1e-10) {
      throw ValidationError("density operator has a complex diagonal entry");
    }
    for (int c = r + 1; c < n; ++c) {
      if (std::abs(at(r, c) - std::conj(at(c, r))) > 1e-10) {
        throw ValidationError("density operator not Hermitian");
      }
    }
  }
  if (std::abs(trace - 1.0) > 1e-10) {
    throw ValidationError("density operator trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(as_eigen(*this),
                                               Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-9) {
    throw ValidationError("density operator has a negative eigenvalue");
  }
}

DensityOperator to_density(const QuditPureState& state) {
  const int d = state.dimension;
  if (d < 2) throw ValidationError("dimension below 2");
  DensityOperator rho(d);
  const int n = rho.size();
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      rho.at(r, c) = state.amplitudes[static_cast<size_t>(r)] *
                     std::conj(state.amplitudes[static_cast<size_t>(c)]);
    }
  }
  return rho;
}

DensityOperator to_density(const CorrelatedMixture& mixture) {
  mixture.check();
  const int d = mixture.dimension;
  DensityOperator rho(d);
  // |l>|-l> has row index i and column index d-1-i in the ascending ordering.
  for (int i = 0; i < d; ++i) {
    const int idx = i * d + (d - 1 - i);
    rho.at(idx, idx) = Complex{mixture.weights[static_cast<size_t>(i)], 0.0};
  }
  return rho;
}

DensityOperator interpolate_density(const QuditPureState& state, const CorrelatedMixture& mixture,
                                    double lambda) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw ValidationError("interpolation weight must lie in [0, 1]");
  }
  if (state.dimension != mixture.dimension) {
    throw ValidationError("state and mixture dimensions differ");
  }
  auto pure = to_density(state);
  const auto cc = to_density(mixture);
  for (size_t i = 0; i < pure.elements.size(); ++i) {
    pure.elements[i] = lambda * pure.elements[i] + (1.0 - lambda) * cc.elements[i];
  }
  return pure;
}

DensityOperator partial_transpose(const DensityOperator& rho) {
  const int d = rho.dimension;
  DensityOperator out(d);
  for (int i1 = 0; i1 < d; ++i1) {
    for (int i2 = 0; i2 < d; ++i2) {
      for (int j1 = 0; j1 < d; ++j1) {
        for (int j2 = 0; j2 < d; ++j2) {
          out.at(i1 * d + i2, j1 * d + j2) = rho.at(i1 * d + j2, j1 * d + i2);
        }
      }
    }
  }
  return out;
}

std::vector<double> schmidt_spectrum(const QuditPureState& state) {
  const int d = state.dimension;
  if (d < 2) throw ValidationError("dimension below 2");
  Matrix amp(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) amp(i, j) = state.at(i, j);
  }
  Eigen::JacobiSVD<Matrix> svd(amp);
  std::vector<double> out(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) out[static_cast<size_t>(i)] = svd.singularValues()(i);
  return out;
}

double entanglement_entropy(const QuditPureState& state) {
  if (!state.is_normalized(1e-8)) {
    throw ValidationError("entanglement entropy requires a normalized state");
  }
  double bits = 0.0;
  for (const double s : schmidt_spectrum(state)) {
    const double p = s * s;
    if (p > 1e-300) bits -= p * std::log2(p);
  }
  return bits;
}

double negativity(const DensityOperator& rho) {
  const int n = rho.size();
  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) {
      if (std::abs(rho.at(r, c) - std::conj(rho.at(c, r))) > 1e-10) {
        throw ValidationError("negativity requires a Hermitian operator");
      }
    }
  }
  const auto pt = partial_transpose(rho);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(as_eigen(pt), Eigen::EigenvaluesOnly);
  double neg = 0.0;
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    const double ev = solver.eigenvalues()(i);
    if (ev < 0.0) neg -= ev;
  }
  return neg;
}

double purity(const DensityOperator& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double p = 0.0;
  for (const auto& e : rho.elements) p += std::norm(e);
  return p;
}

WitnessResult conditionality_witness(std::span<const FringeSlice> slices,
                                     const WitnessThresholds& thresholds) {
  if (slices.size() < 2) {
    throw ValidationError("conditionality witness needs at least two slices");
  }
  for (size_t s = 1; s < slices.size(); ++s) {
    if (slices[s].x1 != slices[0].x1) {
      throw ValidationError("witness slices must share the same x1 grid");
    }
  }
  std::vector<std::vector<double>> normalized;
  normalized.reserve(slices.size());
  WitnessResult result;
  for (const auto& slice : slices) {
    normalized.push_back(unit_max_normalized(slice.rate));
    result.visibilities.push_back(slice.visibility);
  }
  for (size_t s = 0; s < normalized.size(); ++s) {
    for (size_t t = s + 1; t < normalized.size(); ++t) {
      double linf = 0.0;
      for (size_t i = 0; i < normalized[s].size(); ++i) {
        linf = std::max(linf, std::abs(normalized[s][i] - normalized[t][i]));
      }
      result.score = std::max(result.score, linf);
    }
  }
  const bool all_visible = std::all_of(
      result.visibilities.begin(), result.visibilities.end(),
      [&thresholds](double v) { return v > thresholds.visibility; });
  result.entangled_signature = result.score > thresholds.score && all_visible;
  return result;
}

} // namespace bqs
