#include "bitsense/thresholding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bitsense/errors.hpp"

namespace bitsense {

IndexSet top_k_indices(std::span<const double> v, std::size_t k) {
  if (k > v.size()) {
    throw DomainError("top_k: k=" + std::to_string(k) + " exceeds length " + std::to_string(v.size()));
  }
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto by_magnitude = [&](std::size_t i, std::size_t j) {
    const double ai = std::abs(v[i]);
    const double aj = std::abs(v[j]);
    return ai != aj ? ai > aj : i < j;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    by_magnitude);
  IndexSet kept(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(kept.begin(), kept.end());
  return kept;
}

Vector top_k(std::span<const double> v, std::size_t k) {
  Vector out(v.size(), 0.0);
  for (std::size_t i : top_k_indices(v, k)) out[i] = v[i];
  return out;
}

Vector threshold_set(std::span<const double> v, const IndexSet& keep) {
  Vector out(v.size(), 0.0);
  for (std::size_t j : keep) {
    if (j >= v.size()) {
      throw DomainError("threshold_set: index " + std::to_string(j) + " out of range for length " +
                        std::to_string(v.size()));
    }
    out[j] = v[j];
  }
  return out;
}

std::optional<Vector> normalize(std::span<const double> v) {
  const double n = norm2(v);
  if (n == 0.0) return std::nullopt;
  Vector out(v.begin(), v.end());
  for (double& x : out) x /= n;
  return out;
}

}  // namespace bitsense
