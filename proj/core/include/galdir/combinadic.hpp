#pragma once

// Combinadic (colex) ranking of k-subsets of {0..n-1} represented as bit
// masks, plus the same-popcount successor.  Rank ranges split an exhaustive
// subset scan into independent chunks.

#include <cstdint>

namespace galdir {

/// Binomial coefficient; throws std::overflow_error if it exceeds uint64.
std::uint64_t binomial(unsigned n, unsigned k);

/// Colex rank of a k-subset mask among all subsets of the same size.
std::uint64_t subset_rank(std::uint64_t mask);

/// Inverse of subset_rank for subsets of size k.
std::uint64_t subset_unrank(std::uint64_t rank, unsigned k);

/// Next larger integer with the same popcount (Gosper); enumerates k-subsets
/// in colex order, i.e. in subset_rank order.
std::uint64_t next_same_popcount(std::uint64_t mask);

}  // namespace galdir
