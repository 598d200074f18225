#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "cbe/rank_codec.hpp"

namespace cbe {

/// Every arrangement of "banana", listed by rank (row i has rank i).
inline constexpr std::array<std::string_view, 60> kBananaRankTable{
    "nnbaaa", "nbnaaa", "bnnaaa", "nnabaa", "nanbaa", "annbaa", "nbanaa", "bnanaa", "nabnaa", "anbnaa",
    "bannaa", "abnnaa", "nnaaba", "nanaba", "annaba", "naanba", "ananba", "aannba", "nbaana", "bnaana",
    "nabana", "anbana", "banana", "abnana", "naabna", "anabna", "aanbna", "baanna", "abanna", "aabnna",
    "nnaaab", "nanaab", "annaab", "naanab", "ananab", "aannab", "naaanb", "anaanb", "aananb", "aaannb",
    "nbaaan", "bnaaan", "nabaan", "anbaan", "banaan", "abnaan", "naaban", "anaban", "aanban", "baanan",
    "abanan", "aabnan", "naaabn", "anaabn", "aanabn", "aaanbn", "baaann", "abaann", "aabann", "aaabnn",
};

struct SelftestResult {
    std::string group;
    bool passed = false;
    std::string detail;
};

/// Runs the reference examples: the 11-bit worked example, all length-4 two-and-two
/// numerals, the full "banana" ranking, the entropy figures and a randomized
/// entropy-bound sweep. Deterministic.
std::vector<SelftestResult> run_selftest_groups(BinaryAddOrder order = BinaryAddOrder::increment_then_add);

}  // namespace cbe
