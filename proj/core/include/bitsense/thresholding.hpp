#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "bitsense/linalg.hpp"

namespace bitsense {

/// Keeps the k entries of largest magnitude and zeroes the rest.
/// Equal magnitudes are resolved in favour of the lower index.
/// Throws DomainError if k > v.size().
Vector top_k(std::span<const double> v, std::size_t k);

/// Indices kept by top_k, sorted ascending.
IndexSet top_k_indices(std::span<const double> v, std::size_t k);

/// Zeroes every coordinate outside `keep`. Throws DomainError on an index >= v.size().
Vector threshold_set(std::span<const double> v, const IndexSet& keep);

/// v / ||v||_2, or nullopt for the zero vector.
std::optional<Vector> normalize(std::span<const double> v);

}  // namespace bitsense
