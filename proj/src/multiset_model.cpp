#include "cbe/multiset_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cbe/binomial_engine.hpp"
#include "cbe/errors.hpp"

namespace cbe {

namespace {

constexpr Symbol kDenseLimit = 1u << 16;

Count checked_sum(std::span<const Count> counts) {
    Count n = 0;
    for (Count c : counts) {
        if (c > std::numeric_limits<Count>::max() - n) throw std::overflow_error("frequency total overflows");
        n += c;
    }
    return n;
}

double xlog2x(Count x) {
    if (x == 0) return 0.0;
    const auto v = static_cast<double>(x);
    return v * std::log2(v);
}

}  // namespace

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw std::invalid_argument("alphabet must not be empty");
    for (std::size_t i = 1; i < symbols_.size(); ++i) {
        if (symbols_[i - 1] >= symbols_[i]) throw std::invalid_argument("alphabet symbols must be strictly ascending");
    }
    if (symbols_.back() < kDenseLimit && symbols_.size() < kDenseLimit) {
        dense_.assign(symbols_.back() + 1, 0);
        for (std::size_t k = 0; k < symbols_.size(); ++k) dense_[symbols_[k]] = static_cast<std::uint16_t>(k + 1);
    }
}

Alphabet Alphabet::bytes() {
    std::vector<Symbol> s(256);
    for (Symbol i = 0; i < 256; ++i) s[i] = i;
    return Alphabet(std::move(s));
}

Alphabet Alphabet::binary() { return Alphabet({0, 1}); }

Alphabet Alphabet::of(std::span<const Symbol> message) {
    std::vector<Symbol> s(message.begin(), message.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return Alphabet(std::move(s));
}

std::optional<std::size_t> Alphabet::rank_of(Symbol s) const {
    if (!dense_.empty()) {
        if (s >= dense_.size() || dense_[s] == 0) return std::nullopt;
        return static_cast<std::size_t>(dense_[s] - 1);
    }
    const auto it = std::lower_bound(symbols_.begin(), symbols_.end(), s);
    if (it == symbols_.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - symbols_.begin());
}

FrequencyTable::FrequencyTable(Alphabet alphabet)
    : alphabet_(std::move(alphabet)), counts_(alphabet_.size(), 0) {}

FrequencyTable::FrequencyTable(Alphabet alphabet, std::vector<Count> counts)
    : alphabet_(std::move(alphabet)), counts_(std::move(counts)) {
    if (counts_.size() != alphabet_.size()) throw std::invalid_argument("one count per alphabet symbol required");
    n_ = checked_sum(counts_);
}

FrequencyTable::FrequencyTable(Alphabet alphabet, std::vector<Count> counts, Count n)
    : FrequencyTable(std::move(alphabet), std::move(counts)) {
    if (n_ != n) throw std::invalid_argument("counts do not sum to n");
}

std::size_t FrequencyTable::nonzero() const noexcept {
    return static_cast<std::size_t>(std::count_if(counts_.begin(), counts_.end(), [](Count c) { return c != 0; }));
}

FrequencyTable FrequencyTable::rebased(const Alphabet& alphabet) const {
    std::vector<Count> counts(alphabet.size(), 0);
    for (std::size_t k = 0; k < counts_.size(); ++k) {
        if (counts_[k] == 0) continue;
        const auto r = alphabet.rank_of(alphabet_[k]);
        if (!r) throw SymbolNotInAlphabet(alphabet_[k], k);
        counts[*r] = counts_[k];
    }
    return FrequencyTable(alphabet, std::move(counts), n_);
}

FrequencyTable build_frequency_table(std::span<const Symbol> message, const Alphabet& alphabet) {
    std::vector<Count> counts(alphabet.size(), 0);
    for (std::size_t i = 0; i < message.size(); ++i) {
        const auto r = alphabet.rank_of(message[i]);
        if (!r) throw SymbolNotInAlphabet(message[i], i);
        ++counts[*r];
    }
    return FrequencyTable(alphabet, std::move(counts), message.size());
}

double shannon_entropy(const FrequencyTable& table) {
    if (table.n() == 0) return 0.0;
    const auto n = static_cast<double>(table.n());
    double h = 0.0;
    for (Count f : table.counts()) {
        if (f == 0) continue;
        const double p = static_cast<double>(f) / n;
        h -= p * std::log2(p);
    }
    return h;
}

BigUint permutation_count(const FrequencyTable& table) { return multinomial(table.counts()); }

std::size_t payload_bit_length(const BigUint& permutations) {
    if (permutations <= 1) return 0;
    return bit_length(BigUint(permutations - 1));
}

std::size_t payload_bit_length(const FrequencyTable& table) { return payload_bit_length(permutation_count(table)); }

double naive_bit_length(Count n, std::size_t t) {
    if (t == 0) throw std::domain_error("alphabet size must be at least 1");
    return static_cast<double>(n) * std::log2(static_cast<double>(t));
}

double compression_ratio(double uncompressed_bits, double compressed_bits) {
    if (!(compressed_bits > 0.0)) throw std::domain_error("compressed size must be positive");
    return uncompressed_bits / compressed_bits;
}

double space_saving_percent(double uncompressed_bits, double compressed_bits) {
    if (!(uncompressed_bits > 0.0)) throw std::domain_error("uncompressed size must be positive");
    return (1.0 - compressed_bits / uncompressed_bits) * 100.0;
}

double shannon_pattern_count_log2(const FrequencyTable& table) {
    double total = xlog2x(table.n());
    for (Count f : table.counts()) total -= xlog2x(f);
    return total;
}

double lemma1_margin(const FrequencyTable& table) {
    const double nh = static_cast<double>(table.n()) * shannon_entropy(table);
    return nh - log2_real(permutation_count(table));
}

MessageStats compute_stats(const FrequencyTable& table) {
    MessageStats s;
    s.n = table.n();
    s.t_effective = table.nonzero();
    s.entropy_bits_per_symbol = shannon_entropy(table);
    s.shannon_total_bits = static_cast<double>(s.n) * s.entropy_bits_per_symbol;
    const BigUint p = permutation_count(table);
    s.rank_bound_bits_exact = payload_bit_length(p);
    s.rank_bound_bits_real = log2_real(p);
    s.naive_bits = naive_bit_length(s.n, std::max<std::size_t>(s.t_effective, 1));
    // With zero entropy the ratio is unbounded unless there was nothing to compress.
    if (s.shannon_total_bits > 0.0) {
        s.compression_ratio = compression_ratio(s.naive_bits, s.shannon_total_bits);
    } else {
        s.compression_ratio = s.naive_bits > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
    s.space_saving_percent = s.naive_bits > 0.0 ? space_saving_percent(s.naive_bits, s.shannon_total_bits) : 0.0;
    return s;
}

std::vector<Symbol> symbols_from_text(std::string_view text) {
    std::vector<Symbol> out;
    out.reserve(text.size());
    for (char c : text) out.push_back(static_cast<unsigned char>(c));
    return out;
}

std::string text_from_symbols(std::span<const Symbol> symbols) {
    std::string out;
    out.reserve(symbols.size());
    for (Symbol s : symbols) {
        if (s > 0xFF) throw std::invalid_argument("symbol is not a byte");
        out.push_back(static_cast<char>(s));
    }
    return out;
}

}  // namespace cbe
