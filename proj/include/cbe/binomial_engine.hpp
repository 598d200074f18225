#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cbe/big_uint.hpp"
#include "cbe/multiset_model.hpp"

namespace cbe {

/// C(n, k), with C(n, k) = 0 for k < 0 or k > n. Throws std::invalid_argument for n < 0.
BigUint binomial(std::int64_t n, std::int64_t k);

/// (sum counts)! / prod counts_i!, accumulated as a product of binomials so the
/// factorial of the total is never formed.
BigUint multinomial(std::span<const Count> counts);

/// Rows 0..max_n() of Pascal's triangle, built by the additive recurrence.
///
/// Growth happens only through extend(); lookups are const, so a cache that is
/// no longer being extended can be shared freely between threads.
class PascalCache {
public:
    PascalCache();
    explicit PascalCache(std::size_t max_n);

    /// Materializes rows up to n. No-op when n <= max_n().
    void extend(std::size_t n);

    std::size_t max_n() const noexcept { return rows_.size() - 1; }
    std::span<const BigUint> row(std::size_t n) const { return rows_.at(n); }

    /// C(n, k) for n <= max_n(); zero when k > n. Throws std::out_of_range past max_n().
    const BigUint& at(std::size_t n, std::size_t k) const;

    friend bool operator==(const PascalCache& a, const PascalCache& b) { return a.rows_ == b.rows_; }

private:
    std::vector<std::vector<BigUint>> rows_;
};

PascalCache pascal_extend(PascalCache cache, std::size_t n);

/// Fenwick tree over per-symbol counts.
class PrefixCounts {
public:
    explicit PrefixCounts(std::size_t size);
    PrefixCounts(std::span<const Count> counts);

    std::size_t size() const noexcept { return tree_.size() - 1; }
    void add(std::size_t k, std::int64_t delta);
    /// Sum of counts of ranks strictly below k.
    Count prefix(std::size_t k) const;
    /// The rank k with prefix(k) <= q < prefix(k + 1). Requires q < total.
    std::size_t find(Count q) const;

private:
    std::vector<Count> tree_;
    std::size_t top_bit_ = 0;
};

/// Running multinomial C(i; g) over the symbols seen so far.
///
/// advance() performs one small-integer multiply and one exact divide on the
/// big value, so a message of length n costs O(n) big-integer operations.
class MultinomialTracker {
public:
    explicit MultinomialTracker(std::size_t alphabet_size);

    /// Edge weight for a symbol of rank k arriving next:
    /// sum over lower ranks j with g_j > 0 of C(i; g + e_k - e_j),
    /// which collapses to current * (sum_{j<k} g_j) / (g_k + 1).
    BigUint arrival_weight(std::size_t k) const;
    /// acc += arrival_weight(k), reusing `scratch` for the intermediate product.
    void add_arrival_weight(std::size_t k, BigUint& acc, BigUint& scratch) const;

    /// Records an arrival of rank k: current <- current * (i + 1) / (g_k + 1).
    void advance(std::size_t k);

    Count seen() const noexcept { return seen_; }
    const BigUint& current() const noexcept { return current_; }
    std::span<const Count> counts() const noexcept { return counts_; }
    Count prefix(std::size_t k) const { return prefix_.prefix(k); }

private:
    std::vector<Count> counts_;
    PrefixCounts prefix_;
    Count seen_ = 0;
    BigUint current_{1};
};

}  // namespace cbe
