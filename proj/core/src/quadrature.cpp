#include "bqs/quadrature.hpp"

#include "bqs/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace bqs {

namespace {

std::pair<std::vector<double>, std::vector<double>> compute(int n) {
  // Newton iteration on the Legendre recurrence, seeded with the Chebyshev
  // approximation to the roots. Only the lower half is computed; the rest
  // follows by symmetry.
  std::vector<double> x(static_cast<size_t>(n)), w(static_cast<size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[static_cast<size_t>(i)] = -z;
    x[static_cast<size_t>(n - 1 - i)] = z;
    w[static_cast<size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<size_t>(n - 1 - i)] = w[static_cast<size_t>(i)];
  }
  return {std::move(x), std::move(w)};
}

} // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order) {
  if (order < 1) throw ValidationError("quadrature order below 1");
  static std::mutex mutex;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache.emplace(order, compute(order)).first;
  }
  return it->second;
}

} // namespace bqs
