#include "cbe/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "cbe/binomial_engine.hpp"
#include "cbe/errors.hpp"

namespace cbe::oracle {

namespace {

std::size_t rank_or_throw(const Alphabet& alphabet, Symbol s) {
    const auto r = alphabet.rank_of(s);
    if (!r) throw std::invalid_argument("symbol not in alphabet");
    return *r;
}

}  // namespace

bool precedes(std::span<const Symbol> a, std::span<const Symbol> b, const Alphabet& alphabet) {
    if (a.size() != b.size()) throw std::invalid_argument("sequences differ in length");
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] == b[i]) continue;
        return rank_or_throw(alphabet, a[i]) < rank_or_throw(alphabet, b[i]);
    }
    return false;
}

std::vector<std::vector<Symbol>> enumerate_in_rank_order(const FrequencyTable& table, std::size_t cap) {
    const BigUint total = permutation_count(table);
    if (total > cap) throw std::length_error("permutation count " + to_decimal(total) + " exceeds enumeration cap");

    // Work on the reversed sequence of alphabet ranks: plain lexicographic order there is
    // the codec order, and std::next_permutation walks it without repeats.
    std::vector<std::size_t> reversed;
    reversed.reserve(table.n());
    for (std::size_t k = 0; k < table.alphabet().size(); ++k) reversed.insert(reversed.end(), table.count(k), k);

    std::vector<std::vector<Symbol>> rows;
    rows.reserve(total.get_ui());
    do {
        std::vector<Symbol> row(reversed.size());
        for (std::size_t i = 0; i < reversed.size(); ++i) row[reversed.size() - 1 - i] = table.alphabet()[reversed[i]];
        rows.push_back(std::move(row));
    } while (std::next_permutation(reversed.begin(), reversed.end()));
    return rows;
}

std::size_t brute_rank(std::span<const Symbol> message, const FrequencyTable& table, std::size_t cap) {
    bool same_multiset = false;
    try {
        same_multiset = build_frequency_table(message, table.alphabet()) == table;
    } catch (const SymbolNotInAlphabet&) {
    }
    if (!same_multiset) throw std::invalid_argument("message is not a permutation of the frequency table");
    const auto rows = enumerate_in_rank_order(table, cap);
    std::size_t smaller = 0;
    for (const auto& row : rows) {
        if (precedes(row, message, table.alphabet())) ++smaller;
    }
    return smaller;
}

}  // namespace cbe::oracle
