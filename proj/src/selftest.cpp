#include "cbe/selftest.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "cbe/oracle.hpp"

namespace cbe {

namespace {

class Checker {
public:
    explicit Checker(std::string group) { result_.group = std::move(group); }

    template <class A, class B>
    void expect_eq(const std::string& what, const A& actual, const B& expected) {
        if (actual == expected) return;
        std::ostringstream os;
        os << what << ": expected " << expected << ", got " << actual;
        fail(os.str());
    }

    void expect_near(const std::string& what, double actual, double expected, double tol) {
        if (std::fabs(actual - expected) <= tol) return;
        std::ostringstream os;
        os.precision(6);
        os << what << ": expected " << expected << " +/- " << tol << ", got " << actual;
        fail(os.str());
    }

    void fail(const std::string& message) {
        if (!result_.detail.empty()) return;  // first failure is the informative one
        result_.detail = message;
    }

    SelftestResult finish() && {
        result_.passed = result_.detail.empty();
        return std::move(result_);
    }

private:
    SelftestResult result_;
};

SelftestResult worked_binary_example(BinaryAddOrder order) {
    Checker c("binary-worked-example");
    const auto bits = bits_from_numeral("11011100101");
    const auto r = encode_binary(bits, order);
    c.expect_eq("rank of 11011100101", to_decimal(r.rank), "251");
    c.expect_eq("ones", r.ones, Count{7});
    c.expect_eq("zeros", r.zeros, Count{4});
    c.expect_eq("decode(251, 4, 7)", numeral_from_bits(decode_binary(251, 4, 7)), "11011100101");
    return std::move(c).finish();
}

SelftestResult length_four_numerals(BinaryAddOrder order) {
    Checker c("binary-length-4");
    const std::array<std::string_view, 6> numerals{"0011", "0101", "0110", "1001", "1010", "1100"};
    for (std::size_t i = 0; i < numerals.size(); ++i) {
        const auto r = encode_binary(bits_from_numeral(numerals[i]), order);
        c.expect_eq("rank of " + std::string(numerals[i]), to_decimal(r.rank), std::to_string(i));
        c.expect_eq("decode(" + std::to_string(i) + ", 2, 2)", numeral_from_bits(decode_binary(i, 2, 2)),
                    numerals[i]);
    }
    return std::move(c).finish();
}

SelftestResult banana_table() {
    Checker c("banana-table");
    const auto banana = symbols_from_text("banana");
    const Alphabet alphabet = Alphabet::of(banana);
    const FrequencyTable table = build_frequency_table(banana, alphabet);
    c.expect_eq("rank of banana", to_decimal(encode(banana, alphabet).rank), "22");
    c.expect_eq("payload bits", payload_bit_length(table), std::size_t{6});

    const auto rows = oracle::enumerate_in_rank_order(table);
    c.expect_eq("enumerated rows", rows.size(), kBananaRankTable.size());
    for (std::size_t i = 0; i < kBananaRankTable.size() && i < rows.size(); ++i) {
        const std::string expected(kBananaRankTable[i]);
        c.expect_eq("enumeration row " + std::to_string(i), text_from_symbols(rows[i]), expected);
        c.expect_eq("decode(" + std::to_string(i) + ")", text_from_symbols(decode(i, table)), expected);
        c.expect_eq("rank of " + expected, to_decimal(encode(symbols_from_text(expected), alphabet).rank),
                    std::to_string(i));
    }
    return std::move(c).finish();
}

SelftestResult entropy_figures() {
    Checker c("entropy-figures");
    const FrequencyTable table(Alphabet({'a', 'b', 'n'}), {3, 1, 2});
    const double h = shannon_entropy(table);
    c.expect_near("entropy", h, 1.4591, 1e-4);
    c.expect_near("n*H", 6 * h, 8.7546, 1e-3);
    c.expect_near("log2 P", log2_real(permutation_count(table)), 5.9069, 1e-4);
    c.expect_near("naive bits", naive_bit_length(6, 3), 9.5098, 1e-4);
    c.expect_near("compression ratio", compression_ratio(1.5850, 1.4591), 1.0863, 1e-3);
    c.expect_near("space saving", space_saving_percent(1.5850, 1.4591), 7.94, 0.05);
    return std::move(c).finish();
}

SelftestResult entropy_bound_sweep() {
    Checker c("entropy-bound-sweep");
    std::mt19937_64 rng(0x5eed'cbe1);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t t = std::uniform_int_distribution<std::size_t>(2, 16)(rng);
        const Count n = std::uniform_int_distribution<Count>(t, 256)(rng);
        // every symbol at least once, the rest spread at random
        std::vector<Count> counts(t, 1);
        std::uniform_int_distribution<std::size_t> pick(0, t - 1);
        for (Count i = t; i < n; ++i) ++counts[pick(rng)];
        std::vector<Symbol> symbols(t);
        for (std::size_t k = 0; k < t; ++k) symbols[k] = static_cast<Symbol>(k);
        const FrequencyTable table(Alphabet(std::move(symbols)), std::move(counts));

        const double nh = static_cast<double>(n) * shannon_entropy(table);
        const BigUint p = permutation_count(table);
        if (!(log2_real(p) < nh)) {
            c.fail("trial " + std::to_string(trial) + ": log2 P is not below n*H");
            break;
        }
        if (payload_bit_length(p) > static_cast<std::size_t>(std::floor(nh)) + 1) {
            c.fail("trial " + std::to_string(trial) + ": payload exceeds floor(n*H) + 1");
            break;
        }
    }
    return std::move(c).finish();
}

}  // namespace

std::vector<SelftestResult> run_selftest_groups(BinaryAddOrder order) {
    return {
        worked_binary_example(order), length_four_numerals(order), banana_table(), entropy_figures(),
        entropy_bound_sweep(),
    };
}

}  // namespace cbe
