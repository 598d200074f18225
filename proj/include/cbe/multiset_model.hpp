#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbe/big_uint.hpp"

namespace cbe {

using Symbol = std::uint32_t;
using Count = std::uint64_t;

/// Ordered set of distinct symbols. Position in the set is the symbol's rank,
/// and ranks define the order used by the codec.
class Alphabet {
public:
    /// Throws std::invalid_argument unless `symbols` is non-empty and strictly ascending.
    explicit Alphabet(std::vector<Symbol> symbols);

    /// All 256 byte values.
    static Alphabet bytes();
    /// {0, 1}.
    static Alphabet binary();
    /// Sorted distinct symbols of `message`. Throws on an empty message.
    static Alphabet of(std::span<const Symbol> message);

    std::size_t size() const noexcept { return symbols_.size(); }
    Symbol operator[](std::size_t rank) const { return symbols_[rank]; }
    std::span<const Symbol> symbols() const noexcept { return symbols_; }

    std::optional<std::size_t> rank_of(Symbol s) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

private:
    std::vector<Symbol> symbols_;
    // rank + 1 per symbol value, 0 when absent; only built for small symbol values
    std::vector<std::uint16_t> dense_;
};

/// Per-symbol occurrence counts over an alphabet, with n = sum of counts.
class FrequencyTable {
public:
    /// All-zero table.
    explicit FrequencyTable(Alphabet alphabet);
    /// Throws std::invalid_argument if counts.size() != alphabet.size().
    FrequencyTable(Alphabet alphabet, std::vector<Count> counts);
    /// As above, additionally checking that the counts sum to `n`.
    FrequencyTable(Alphabet alphabet, std::vector<Count> counts, Count n);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::span<const Count> counts() const noexcept { return counts_; }
    Count count(std::size_t rank) const { return counts_[rank]; }
    Count n() const noexcept { return n_; }
    std::size_t nonzero() const noexcept;

    /// Same counts over `alphabet`, which must contain every symbol with a nonzero count.
    FrequencyTable rebased(const Alphabet& alphabet) const;

    friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;

private:
    Alphabet alphabet_;
    std::vector<Count> counts_;
    Count n_ = 0;
};

/// Information-theoretic summary of one frequency table.
struct MessageStats {
    Count n = 0;
    std::size_t t_effective = 0;
    double entropy_bits_per_symbol = 0.0;
    double shannon_total_bits = 0.0;
    std::size_t rank_bound_bits_exact = 0;
    double rank_bound_bits_real = 0.0;
    double naive_bits = 0.0;
    double compression_ratio = 1.0;
    double space_saving_percent = 0.0;
};

/// Throws SymbolNotInAlphabet naming the first offending symbol and its position.
FrequencyTable build_frequency_table(std::span<const Symbol> message, const Alphabet& alphabet);

/// H = -sum p log2 p over nonzero counts; 0 for an empty table.
double shannon_entropy(const FrequencyTable& table);

/// n! / prod f_i!
BigUint permutation_count(const FrequencyTable& table);

/// ceil(log2 P) computed from the integer: bit length of P - 1, and 0 when P == 1.
std::size_t payload_bit_length(const BigUint& permutations);
std::size_t payload_bit_length(const FrequencyTable& table);

/// n * log2 t
double naive_bit_length(Count n, std::size_t t);

/// Throws std::domain_error when compressed_bits <= 0.
double compression_ratio(double uncompressed_bits, double compressed_bits);

/// Throws std::domain_error when uncompressed_bits <= 0.
double space_saving_percent(double uncompressed_bits, double compressed_bits);

/// log2(n^n / prod f_i^f_i) = n log2 n - sum f_i log2 f_i, which equals n * H.
double shannon_pattern_count_log2(const FrequencyTable& table);

/// n * H - log2 P. Positive whenever two or more counts are nonzero, zero otherwise.
double lemma1_margin(const FrequencyTable& table);

/// Naive bits use t = number of nonzero symbols, matching how the alphabet of a
/// message is usually counted. Ratio and saving compare naive bits against n * H.
MessageStats compute_stats(const FrequencyTable& table);

/// Characters of `text` as byte symbols.
std::vector<Symbol> symbols_from_text(std::string_view text);
/// Inverse of symbols_from_text; symbols must be bytes.
std::string text_from_symbols(std::span<const Symbol> symbols);

}  // namespace cbe
