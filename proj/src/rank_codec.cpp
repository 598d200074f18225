#include "cbe/rank_codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cbe/errors.hpp"

namespace cbe {

namespace {

bool fits_product(std::uint64_t a, std::uint64_t b) {
    return b == 0 || a <= std::numeric_limits<std::uint64_t>::max() / b;
}

void require_rows(const PascalCache& cache, std::size_t n) {
    if (cache.max_n() < n) {
        throw std::invalid_argument("pascal cache holds rows up to " + std::to_string(cache.max_n()) + ", need " +
                                    std::to_string(n));
    }
}

}  // namespace

BinaryRank encode_binary(std::span<const std::uint8_t> bits, const PascalCache& cache, BinaryAddOrder order) {
    if (!bits.empty()) require_rows(cache, bits.size() - 1);
    BinaryRank out;
    Count ones = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] > 1) throw SymbolNotInAlphabet(bits[i], i);
        if (bits[i] == 0) {
            ++out.zeros;
            continue;
        }
        if (order == BinaryAddOrder::increment_then_add) {
            ++ones;
            out.rank += cache.at(i, ones);
        } else {
            if (i > ones) out.rank += cache.at(i, ones);
            ++ones;
        }
    }
    out.ones = ones;
    return out;
}

BinaryRank encode_binary(std::span<const std::uint8_t> bits, BinaryAddOrder order) {
    const PascalCache cache(bits.empty() ? 0 : bits.size() - 1);
    return encode_binary(bits, cache, order);
}

std::vector<std::uint8_t> decode_binary(const BigUint& rank, Count zeros, Count ones, const PascalCache& cache) {
    const Count n = zeros + ones;
    require_rows(cache, n);
    if (sgn(rank) < 0 || rank >= cache.at(n, ones)) {
        throw InvalidIndex("rank " + to_decimal(rank) + " is not below C(" + std::to_string(n) + ", " +
                           std::to_string(ones) + ")");
    }
    std::vector<std::uint8_t> out(n, 0);
    BigUint rest = rank;
    for (Count m = n; m > 0; --m) {
        const BigUint& threshold = cache.at(m - 1, ones);
        if (ones > 0 && rest >= threshold) {
            rest -= threshold;
            out[m - 1] = 1;
            --ones;
        }
    }
    return out;
}

std::vector<std::uint8_t> decode_binary(const BigUint& rank, Count zeros, Count ones) {
    const PascalCache cache(zeros + ones);
    return decode_binary(rank, zeros, ones, cache);
}

std::vector<std::uint8_t> bits_from_numeral(std::string_view numeral) {
    std::vector<std::uint8_t> bits;
    bits.reserve(numeral.size());
    for (auto it = numeral.rbegin(); it != numeral.rend(); ++it) {
        if (*it != '0' && *it != '1') throw std::invalid_argument("binary numeral may only contain 0 and 1");
        bits.push_back(static_cast<std::uint8_t>(*it - '0'));
    }
    return bits;
}

std::string numeral_from_bits(std::span<const std::uint8_t> bits) {
    std::string out;
    out.reserve(bits.size());
    for (auto it = bits.rbegin(); it != bits.rend(); ++it) out.push_back(*it ? '1' : '0');
    return out;
}

StreamEncoder::StreamEncoder(Alphabet alphabet)
    : alphabet_(std::move(alphabet)), counts_(alphabet_.size(), 0), prefix_(alphabet_.size()) {}

void StreamEncoder::push(Symbol s) {
    const auto k = alphabet_.rank_of(s);
    if (!k) throw SymbolNotInAlphabet(s, seen_);
    push_rank(*k);
}

void StreamEncoder::push_rank(std::size_t k) {
    const Count below = prefix_.prefix(k);
    const Count divisor = counts_[k] + 1;
    const Count multiplier = seen_ + 1;
    if (!fits_product(num_, std::max(below, multiplier)) || !fits_product(den_, divisor)) normalize();

    // rank' * den * divisor = rank * den * divisor + base * num * below
    mpz_mul_ui(scaled_.get_mpz_t(), scaled_.get_mpz_t(), divisor);
    if (below != 0) mpz_addmul_ui(scaled_.get_mpz_t(), base_.get_mpz_t(), num_ * below);
    num_ *= multiplier;
    den_ *= divisor;

    ++counts_[k];
    ++seen_;
    prefix_.add(k, 1);
}

void StreamEncoder::normalize() {
    if (num_ != 1) mpz_mul_ui(base_.get_mpz_t(), base_.get_mpz_t(), num_);
    if (den_ != 1) {
        mpz_divexact_ui(base_.get_mpz_t(), base_.get_mpz_t(), den_);
        mpz_divexact_ui(scaled_.get_mpz_t(), scaled_.get_mpz_t(), den_);
    }
    num_ = 1;
    den_ = 1;
}

BigUint StreamEncoder::rank() const {
    BigUint r = scaled_;
    if (den_ != 1) mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), den_);
    return r;
}

FrequencyTable StreamEncoder::table() const { return FrequencyTable(alphabet_, counts_, seen_); }

EncodedMessage StreamEncoder::finish() && {
    normalize();
    FrequencyTable t = table();
    return EncodedMessage{std::move(scaled_), std::move(t)};
}

EncodedMessage encode(std::span<const Symbol> message, const Alphabet& alphabet) {
    StreamEncoder encoder(alphabet);
    for (Symbol s : message) encoder.push(s);
    return std::move(encoder).finish();
}

std::vector<Symbol> decode(const BigUint& rank, const FrequencyTable& table) {
    const BigUint permutations = permutation_count(table);
    if (sgn(rank) < 0 || rank >= permutations) {
        throw InvalidIndex("rank " + to_decimal(rank) + " is not below the permutation count " +
                           to_decimal(permutations));
    }
    const Alphabet& alphabet = table.alphabet();
    std::vector<Count> counts(table.counts().begin(), table.counts().end());
    PrefixCounts prefix(counts);
    std::vector<Symbol> out(table.n());

    // With m symbols left and counts f, the remaining multinomial is R = base * num / den
    // and the residual rank is scaled / den. Rank k owns the residuals in
    // [R * prefix(k) / m, R * prefix(k + 1) / m), i.e. k is the symbol whose cumulative
    // range contains floor(residual * m / R) = floor(scaled * m / (base * num)).
    BigUint base = permutations;
    BigUint scaled = rank;
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    BigUint lhs;
    BigUint rhs;

    auto normalize = [&] {
        if (num != 1) mpz_mul_ui(base.get_mpz_t(), base.get_mpz_t(), num);
        if (den != 1) {
            mpz_divexact_ui(base.get_mpz_t(), base.get_mpz_t(), den);
            mpz_divexact_ui(scaled.get_mpz_t(), scaled.get_mpz_t(), den);
        }
        num = 1;
        den = 1;
    };
    // -1: rank k starts above the residual, +1: it ends at or below it, 0: k is right
    auto exact_side = [&](std::size_t k, Count m) {
        mpz_mul_ui(lhs.get_mpz_t(), scaled.get_mpz_t(), m);
        mpz_mul_ui(rhs.get_mpz_t(), base.get_mpz_t(), num * prefix.prefix(k));
        if (lhs < rhs) return -1;
        mpz_mul_ui(rhs.get_mpz_t(), base.get_mpz_t(), num * (prefix.prefix(k) + counts[k]));
        return lhs < rhs ? 0 : 1;
    };

    for (Count m = table.n(); m > 0; --m) {
        if (!fits_product(num, m) || !fits_product(den, m)) normalize();

        double estimate = 0.0;
        if (sgn(scaled) != 0) {
            long e_scaled = 0;
            long e_base = 0;
            const double d_scaled = mpz_get_d_2exp(&e_scaled, scaled.get_mpz_t());
            const double d_base = mpz_get_d_2exp(&e_base, base.get_mpz_t());
            estimate = std::ldexp(d_scaled / d_base, static_cast<int>(e_scaled - e_base)) *
                       (static_cast<double>(m) / static_cast<double>(num));
        }
        const Count q = std::min<Count>(static_cast<Count>(std::max(estimate, 0.0)), m - 1);
        std::size_t k = prefix.find(q);

        constexpr double kMargin = 1e-6;
        const auto lo = static_cast<double>(prefix.prefix(k));
        const auto hi = lo + static_cast<double>(counts[k]);
        if (estimate - lo < kMargin || hi - estimate < kMargin) {
            for (int side = exact_side(k, m); side != 0; side = exact_side(k, m)) {
                k = side < 0 ? prefix.find(prefix.prefix(k) - 1) : prefix.find(prefix.prefix(k) + counts[k]);
            }
        }

        // residual' * den * m = residual * den * m - base * num * prefix(k)
        const Count below = prefix.prefix(k);
        mpz_mul_ui(scaled.get_mpz_t(), scaled.get_mpz_t(), m);
        if (below != 0) mpz_submul_ui(scaled.get_mpz_t(), base.get_mpz_t(), num * below);
        num *= counts[k];
        den *= m;

        --counts[k];
        prefix.add(k, -1);
        out[m - 1] = alphabet[k];
    }
    return out;
}

}  // namespace cbe
