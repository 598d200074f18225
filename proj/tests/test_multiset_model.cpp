#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cbe/errors.hpp"
#include "cbe/multiset_model.hpp"
#include "test_support.hpp"

using namespace cbe;

namespace {

const Alphabet kAbn({'a', 'b', 'n'});
const Alphabet kAb({'a', 'b'});

FrequencyTable table_of(std::vector<Count> counts) {
    const std::size_t t = counts.size();
    return FrequencyTable(test::first_symbols(t), std::move(counts));
}

}  // namespace

TEST_CASE("alphabet rejects empty and unordered symbol lists") {
    CHECK_THROWS_AS(Alphabet({}), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet({2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet({1, 1}), std::invalid_argument);
    const Alphabet wide({5, 70000, 1u << 30});
    CHECK(wide.rank_of(70000) == 1u);
    CHECK_FALSE(wide.rank_of(6).has_value());
    CHECK(Alphabet::bytes().rank_of(255) == 255u);
}

TEST_CASE("frequency table checks its total") {
    CHECK_THROWS_AS(FrequencyTable(kAb, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(FrequencyTable(kAb, {1, 2}, 4), std::invalid_argument);
    CHECK(FrequencyTable(kAb, {1, 2}, 3).n() == 3);
}

TEST_CASE("build_frequency_table") {
    SUBCASE("banana") {
        const auto t = build_frequency_table(symbols_from_text("banana"), kAbn);
        CHECK(t.counts()[0] == 3);
        CHECK(t.counts()[1] == 1);
        CHECK(t.counts()[2] == 2);
        CHECK(t.n() == 6);
    }
    SUBCASE("empty") {
        const auto t = build_frequency_table({}, kAb);
        CHECK(t.n() == 0);
        CHECK(t.counts()[0] == 0);
        CHECK(t.counts()[1] == 0);
    }
    SUBCASE("single symbol") {
        const auto t = build_frequency_table(symbols_from_text("aaaa"), kAb);
        CHECK(t.counts()[0] == 4);
        CHECK(t.counts()[1] == 0);
    }
    SUBCASE("foreign symbol reports symbol and position") {
        try {
            build_frequency_table(symbols_from_text("abxa"), kAb);
            FAIL("expected SymbolNotInAlphabet");
        } catch (const SymbolNotInAlphabet& e) {
            CHECK(e.symbol() == 'x');
            CHECK(e.position() == 2);
        }
    }
}

TEST_CASE("shannon_entropy") {
    CHECK(std::fabs(shannon_entropy(FrequencyTable(kAbn, {3, 1, 2})) - 1.4591) < 1e-4);
    CHECK(shannon_entropy(table_of({7})) == 0.0);
    CHECK(shannon_entropy(table_of({1, 1})) == 1.0);
    CHECK(shannon_entropy(table_of({0, 0})) == 0.0);
    CHECK(shannon_entropy(table_of({0, 5, 0})) == 0.0);
}

TEST_CASE("permutation_count") {
    CHECK(permutation_count(FrequencyTable(kAbn, {3, 1, 2})) == 60);
    CHECK(permutation_count(table_of({9})) == 1);
    CHECK(permutation_count(table_of({2, 2})) == 6);
    CHECK(permutation_count(table_of({0, 0})) == 1);
}

TEST_CASE("payload_bit_length") {
    CHECK(payload_bit_length(BigUint(60)) == 6);
    CHECK(payload_bit_length(BigUint(1)) == 0);
    CHECK(payload_bit_length(BigUint(2)) == 1);
    CHECK(payload_bit_length(BigUint(64)) == 6);
    CHECK(payload_bit_length(BigUint(65)) == 7);

    const auto row = test::pascal_row(11);
    REQUIRE(row[7] == 330);
    CHECK(payload_bit_length(BigUint(static_cast<unsigned long>(row[7]))) == 9);
    CHECK(payload_bit_length(table_of({4, 7})) == 9);
    CHECK(payload_bit_length(table_of({0, 0})) == 0);
}

TEST_CASE("naive_bit_length, compression_ratio, space_saving_percent") {
    CHECK(std::fabs(naive_bit_length(6, 3) - 9.5098) < 1e-4);
    CHECK(naive_bit_length(0, 3) == 0.0);
    CHECK(naive_bit_length(8, 2) == 8.0);
    CHECK_THROWS_AS(naive_bit_length(3, 0), std::domain_error);

    CHECK(std::fabs(compression_ratio(1.5850, 1.4591) - 1.0863) < 1e-3);
    CHECK(compression_ratio(3.5, 3.5) == 1.0);
    CHECK(compression_ratio(10, 5) == 2.0);
    CHECK_THROWS_AS(compression_ratio(10, 0), std::domain_error);

    CHECK(std::fabs(space_saving_percent(1.5850, 1.4591) - 7.94) < 0.05);
    CHECK(space_saving_percent(4, 4) == 0.0);
    CHECK(space_saving_percent(10, 5) == 50.0);
    CHECK_THROWS_AS(space_saving_percent(0, 5), std::domain_error);
}

TEST_CASE("shannon_pattern_count_log2 and lemma1_margin") {
    const FrequencyTable banana(kAbn, {3, 1, 2});
    CHECK(std::fabs(shannon_pattern_count_log2(banana) - 8.7546) < 1e-3);
    CHECK(shannon_pattern_count_log2(table_of({5})) == 0.0);
    CHECK(shannon_pattern_count_log2(table_of({2, 2})) == doctest::Approx(4.0));

    // 8.7546 - 5.9069 from the reference figures
    CHECK(std::fabs(lemma1_margin(banana) - 2.8477) < 1e-3);
    CHECK(lemma1_margin(table_of({5})) == 0.0);
    CHECK(lemma1_margin(table_of({1, 1})) == doctest::Approx(1.0));
}

TEST_CASE("empty message limits") {
    const FrequencyTable empty(kAb);
    CHECK(shannon_entropy(empty) == 0.0);
    CHECK(permutation_count(empty) == 1);
    CHECK(payload_bit_length(empty) == 0);
    const auto s = compute_stats(empty);
    CHECK(s.n == 0);
    CHECK(s.rank_bound_bits_exact == 0);
    CHECK(s.compression_ratio == 1.0);
    CHECK(s.space_saving_percent == 0.0);
}

TEST_CASE("compute_stats for banana") {
    const auto s = compute_stats(FrequencyTable(kAbn, {3, 1, 2}));
    CHECK(s.n == 6);
    CHECK(s.t_effective == 3);
    CHECK(std::fabs(s.entropy_bits_per_symbol - 1.4591) < 1e-4);
    CHECK(std::fabs(s.shannon_total_bits - 8.7546) < 1e-3);
    CHECK(s.rank_bound_bits_exact == 6);
    CHECK(std::fabs(s.rank_bound_bits_real - 5.9069) < 1e-4);
    CHECK(std::fabs(s.naive_bits - 9.5098) < 1e-4);
    CHECK(std::fabs(s.compression_ratio - 1.0863) < 1e-3);
    CHECK(std::fabs(s.space_saving_percent - 7.94) < 0.05);
}

TEST_CASE("entropy bound properties over random tables") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t t = std::uniform_int_distribution<std::size_t>(2, 16)(rng);
        const Count n = std::uniform_int_distribution<Count>(t, 256)(rng);
        const FrequencyTable table = test::random_table(rng, t, n);
        CAPTURE(trial);

        const double nh = static_cast<double>(n) * shannon_entropy(table);
        const BigUint p = permutation_count(table);
        CHECK(log2_real(p) < nh);
        CHECK(lemma1_margin(table) > 0.0);
        CHECK(payload_bit_length(p) <= static_cast<std::size_t>(std::floor(nh)) + 1);

        const double patterns = shannon_pattern_count_log2(table);
        CHECK(std::fabs(patterns - nh) <= 1e-9 * nh);

        std::vector<Count> sorted(table.counts().begin(), table.counts().end());
        std::sort(sorted.begin(), sorted.end());
        std::shuffle(sorted.begin(), sorted.end(), rng);
        CHECK(permutation_count(FrequencyTable(table.alphabet(), sorted)) == p);
    }
}

TEST_CASE("text symbol helpers") {
    CHECK(text_from_symbols(symbols_from_text("a\xff")) == "a\xff");
    CHECK_THROWS_AS(text_from_symbols(std::vector<Symbol>{300}), std::invalid_argument);
}
