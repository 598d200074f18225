#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cbe/multiset_model.hpp"

namespace cbe::oracle {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// m < m' iff at the largest position where they differ, m holds the lower-ranked symbol.
bool precedes(std::span<const Symbol> a, std::span<const Symbol> b, const Alphabet& alphabet);

/// Every distinct permutation of the table's multiset, in rank order.
/// Throws std::length_error when the permutation count exceeds `cap`.
std::vector<std::vector<Symbol>> enumerate_in_rank_order(const FrequencyTable& table,
                                                         std::size_t cap = kDefaultEnumerationCap);

/// Number of permutations strictly preceding `message`, by exhaustive counting.
/// Throws std::invalid_argument when `message` is not a permutation of `table`.
std::size_t brute_rank(std::span<const Symbol> message, const FrequencyTable& table,
                       std::size_t cap = kDefaultEnumerationCap);

}  // namespace cbe::oracle
