#include "cbe/binomial_engine.hpp"

#include <bit>
#include <stdexcept>

namespace cbe {

BigUint binomial(std::int64_t n, std::int64_t k) {
    if (n < 0) throw std::invalid_argument("binomial requires n >= 0");
    BigUint out;
    if (k < 0 || k > n) return out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

BigUint multinomial(std::span<const Count> counts) {
    BigUint out{1};
    BigUint step;
    Count total = 0;
    for (Count c : counts) {
        if (c == 0) continue;
        total += c;
        mpz_bin_uiui(step.get_mpz_t(), total, c);
        out *= step;
    }
    return out;
}

PascalCache::PascalCache() : rows_{{BigUint{1}}} {}

PascalCache::PascalCache(std::size_t max_n) : PascalCache() { extend(max_n); }

void PascalCache::extend(std::size_t n) {
    rows_.reserve(n + 1);
    while (rows_.size() <= n) {
        const auto& prev = rows_.back();
        std::vector<BigUint> row(prev.size() + 1);
        row.front() = 1;
        row.back() = 1;
        for (std::size_t k = 1; k < prev.size(); ++k) row[k] = prev[k - 1] + prev[k];
        rows_.push_back(std::move(row));
    }
}

const BigUint& PascalCache::at(std::size_t n, std::size_t k) const {
    static const BigUint zero{0};
    const auto& row = rows_.at(n);
    return k < row.size() ? row[k] : zero;
}

PascalCache pascal_extend(PascalCache cache, std::size_t n) {
    cache.extend(n);
    return cache;
}

PrefixCounts::PrefixCounts(std::size_t size) : tree_(size + 1, 0) {
    top_bit_ = size == 0 ? 0 : std::bit_floor(size);
}

PrefixCounts::PrefixCounts(std::span<const Count> counts) : PrefixCounts(counts.size()) {
    for (std::size_t i = 1; i < tree_.size(); ++i) {
        tree_[i] += counts[i - 1];
        const std::size_t parent = i + (i & (~i + 1));
        if (parent < tree_.size()) tree_[parent] += tree_[i];
    }
}

void PrefixCounts::add(std::size_t k, std::int64_t delta) {
    for (std::size_t i = k + 1; i < tree_.size(); i += i & (~i + 1)) {
        tree_[i] = static_cast<Count>(static_cast<std::int64_t>(tree_[i]) + delta);
    }
}

Count PrefixCounts::prefix(std::size_t k) const {
    Count sum = 0;
    for (std::size_t i = k; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
}

std::size_t PrefixCounts::find(Count q) const {
    std::size_t pos = 0;
    for (std::size_t step = top_bit_; step > 0; step >>= 1) {
        const std::size_t next = pos + step;
        if (next < tree_.size() && tree_[next] <= q) {
            pos = next;
            q -= tree_[next];
        }
    }
    return pos;
}

MultinomialTracker::MultinomialTracker(std::size_t alphabet_size)
    : counts_(alphabet_size, 0), prefix_(alphabet_size) {}

BigUint MultinomialTracker::arrival_weight(std::size_t k) const {
    BigUint w;
    BigUint scratch;
    add_arrival_weight(k, w, scratch);
    return w;
}

void MultinomialTracker::add_arrival_weight(std::size_t k, BigUint& acc, BigUint& scratch) const {
    const Count below = prefix_.prefix(k);
    if (below == 0) return;
    // Each term current * g_j / (g_k + 1) is itself an integer, so the sum divides exactly.
    mpz_mul_ui(scratch.get_mpz_t(), current_.get_mpz_t(), below);
    mpz_divexact_ui(scratch.get_mpz_t(), scratch.get_mpz_t(), counts_[k] + 1);
    acc += scratch;
}

void MultinomialTracker::advance(std::size_t k) {
    mpz_mul_ui(current_.get_mpz_t(), current_.get_mpz_t(), seen_ + 1);
    if (mpz_tdiv_q_ui(current_.get_mpz_t(), current_.get_mpz_t(), counts_[k] + 1) != 0) {
        throw std::logic_error("multinomial tracker: inexact division");
    }
    ++counts_[k];
    ++seen_;
    prefix_.add(k, 1);
}

}  // namespace cbe
