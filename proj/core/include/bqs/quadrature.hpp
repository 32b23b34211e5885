#pragma once

#include <utility>
#include <vector>

namespace bqs {

/// Gauss-Legendre nodes and weights on [-1, 1]. Nodes ascend. Results are
/// memoized per order; thread-safe.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order);

} // namespace bqs
