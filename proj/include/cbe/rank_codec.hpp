#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbe/big_uint.hpp"
#include "cbe/binomial_engine.hpp"
#include "cbe/multiset_model.hpp"

namespace cbe {

// Arrival convention: element 0 of a sequence is processed first and is the least
// significant position. A binary numeral written MSB first is therefore read right
// to left, while a text string is read left to right.

struct BinaryRank {
    BigUint rank;
    Count zeros = 0;
    Count ones = 0;

    friend bool operator==(const BinaryRank&, const BinaryRank&) = default;
};

/// When the ONE counter is bumped relative to adding C(i, j).
enum class BinaryAddOrder {
    /// j counts the current ONE. Reproduces 251 for the worked example.
    increment_then_add,
    /// Add C(i, j) first, then bump j, skipping the add when i <= j. Produces 403 for
    /// the same input and is not a bijection; kept to guard the fix.
    add_then_increment,
};

/// Combinadic rank of a bit sequence: sum over ONEs at position i of C(i, j), where j
/// is the number of ONEs at positions <= i. `cache` must hold rows up to bits.size() - 1.
BinaryRank encode_binary(std::span<const std::uint8_t> bits, const PascalCache& cache,
                         BinaryAddOrder order = BinaryAddOrder::increment_then_add);
BinaryRank encode_binary(std::span<const std::uint8_t> bits,
                         BinaryAddOrder order = BinaryAddOrder::increment_then_add);

/// Greedy reconstruction from the top position down. `cache` must hold rows up to
/// zeros + ones. Throws InvalidIndex when rank >= C(zeros + ones, ones).
std::vector<std::uint8_t> decode_binary(const BigUint& rank, Count zeros, Count ones,
                                        const PascalCache& cache);
std::vector<std::uint8_t> decode_binary(const BigUint& rank, Count zeros, Count ones);

/// Arrivals of a numeral such as "11011100101" (last character first).
std::vector<std::uint8_t> bits_from_numeral(std::string_view numeral);
std::string numeral_from_bits(std::span<const std::uint8_t> bits);

struct EncodedMessage {
    BigUint rank;
    FrequencyTable table;
};

/// Forward-only encoder: symbols are consumed strictly in arrival order and the
/// rank is final after the last push.
///
/// This is the MultinomialTracker recurrence with the small divisors deferred: the
/// running multinomial is base * num / den and the rank is scaled / den, with num and
/// den kept in machine words and folded into the big values only when they would
/// overflow. Each symbol then costs one small multiply and one fused multiply-add.
class StreamEncoder {
public:
    explicit StreamEncoder(Alphabet alphabet);

    /// Throws SymbolNotInAlphabet.
    void push(Symbol s);
    void push_rank(std::size_t k);

    BigUint rank() const;
    FrequencyTable table() const;
    EncodedMessage finish() &&;

private:
    void normalize();

    Alphabet alphabet_;
    std::vector<Count> counts_;
    PrefixCounts prefix_;
    Count seen_ = 0;
    BigUint base_{1};
    BigUint scaled_{0};
    std::uint64_t num_ = 1;
    std::uint64_t den_ = 1;
};

/// Rank of `message` among the permutations of its multiset, plus the final counts.
EncodedMessage encode(std::span<const Symbol> message, const Alphabet& alphabet);

/// Inverse of encode. Throws InvalidIndex when rank >= permutation_count(table).
std::vector<Symbol> decode(const BigUint& rank, const FrequencyTable& table);

}  // namespace cbe
