#include <doctest.h>

#include <algorithm>
#include <iterator>
#include <random>
#include <set>
#include <sstream>

#include "cbe/errors.hpp"
#include "cbe/rank_codec.hpp"
#include "test_support.hpp"

using namespace cbe;

namespace {

const Alphabet kAbn({'a', 'b', 'n'});

BigUint rank_of_text(std::string_view text, const Alphabet& alphabet = kAbn) {
    return encode(symbols_from_text(text), alphabet).rank;
}

}  // namespace

TEST_CASE("numeral helpers read right to left") {
    const auto bits = bits_from_numeral("0011");
    CHECK(bits == std::vector<std::uint8_t>{1, 1, 0, 0});
    CHECK(numeral_from_bits(bits) == "0011");
    CHECK_THROWS_AS(bits_from_numeral("012"), std::invalid_argument);
}

TEST_CASE("encode_binary") {
    SUBCASE("worked example") {
        const auto r = encode_binary(bits_from_numeral("11011100101"));
        CHECK(r.rank == 251);
        CHECK(r.ones == 7);
        CHECK(r.zeros == 4);
    }
    SUBCASE("two zeros and two ones") {
        const char* numerals[] = {"0011", "0101", "0110", "1001", "1010", "1100"};
        for (int i = 0; i < 6; ++i) CHECK(encode_binary(bits_from_numeral(numerals[i])).rank == i);
    }
    SUBCASE("all zeros") {
        for (std::size_t n : {0u, 1u, 17u, 300u}) {
            const auto r = encode_binary(std::vector<std::uint8_t>(n, 0));
            CHECK(r.rank == 0);
            CHECK(r.zeros == n);
            CHECK(r.ones == 0);
        }
    }
    SUBCASE("printed add order gives 403 for the worked example") {
        const auto r = encode_binary(bits_from_numeral("11011100101"), BinaryAddOrder::add_then_increment);
        CHECK(r.rank == 403);
    }
    SUBCASE("rejects non-bits and short caches") {
        CHECK_THROWS_AS(encode_binary(std::vector<std::uint8_t>{0, 2}), SymbolNotInAlphabet);
        const PascalCache small(3);
        CHECK_THROWS_AS(encode_binary(std::vector<std::uint8_t>(6, 1), small), std::invalid_argument);
    }
}

TEST_CASE("decode_binary") {
    CHECK(numeral_from_bits(decode_binary(251, 4, 7)) == "11011100101");
    CHECK(numeral_from_bits(decode_binary(0, 2, 2)) == "0011");
    CHECK(decode_binary(0, 9, 0) == std::vector<std::uint8_t>(9, 0));
    CHECK(decode_binary(0, 0, 0).empty());
    CHECK_THROWS_AS(decode_binary(6, 2, 2), InvalidIndex);
    CHECK_THROWS_AS(decode_binary(330, 4, 7), InvalidIndex);
    CHECK_THROWS_AS(decode_binary(-1, 2, 2), InvalidIndex);

    // every rank of every small binary multiset decodes back to itself
    for (Count zeros = 0; zeros <= 8; ++zeros) {
        for (Count ones = 0; ones <= 8; ++ones) {
            const auto p = binomial(static_cast<std::int64_t>(zeros + ones), static_cast<std::int64_t>(ones)).get_ui();
            for (unsigned long l = 0; l < p; ++l) {
                const auto bits = decode_binary(l, zeros, ones);
                const auto back = encode_binary(bits);
                CHECK(back.rank == l);
                CHECK(back.zeros == zeros);
                CHECK(back.ones == ones);
            }
        }
    }
}

TEST_CASE("encode over t symbols") {
    CHECK(rank_of_text("banana") == 22);
    CHECK(rank_of_text("nnbaaa") == 0);
    CHECK(rank_of_text("aaabnn") == 59);
    CHECK(rank_of_text("aabb", Alphabet({'a', 'b'})) == 5);
    CHECK(rank_of_text("", kAbn) == 0);
    CHECK(encode({}, kAbn).table.n() == 0);

    const auto r = encode(symbols_from_text("banana"), kAbn);
    CHECK(r.table == FrequencyTable(kAbn, {3, 1, 2}));
    CHECK_THROWS_AS(encode(symbols_from_text("bandana"), kAbn), SymbolNotInAlphabet);
}

TEST_CASE("decode over t symbols") {
    const FrequencyTable table(kAbn, {3, 1, 2});
    CHECK(text_from_symbols(decode(22, table)) == "banana");
    CHECK(text_from_symbols(decode(0, table)) == "nnbaaa");
    CHECK(text_from_symbols(decode(59, table)) == "aaabnn");
    CHECK_THROWS_AS(decode(60, table), InvalidIndex);
    CHECK(decode(0, FrequencyTable(kAbn)).empty());
    CHECK_THROWS_AS(decode(1, FrequencyTable(kAbn)), InvalidIndex);
}

TEST_CASE("exhaustive roundtrip for t <= 3, n <= 8") {
    for (std::size_t t = 1; t <= 3; ++t) {
        const Alphabet alphabet = test::first_symbols(t);
        for (std::size_t n = 0; n <= 8; ++n) {
            test::for_each_message(t, n, [&](std::span<const Symbol> m) {
                const auto r = encode(m, alphabet);
                REQUIRE(r.rank < permutation_count(r.table));
                REQUIRE(std::equal(m.begin(), m.end(), decode(r.rank, r.table).begin()));
            });
        }
    }
}

TEST_CASE("randomized roundtrip with large alphabets") {
    std::mt19937_64 rng(23);
    const Alphabet bytes = Alphabet::bytes();
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t t = std::uniform_int_distribution<std::size_t>(1, 256)(rng);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 1024)(rng);
        const auto m = test::random_message(rng, t, n);
        const auto r = encode(m, bytes);
        REQUIRE(r.rank < permutation_count(r.table));
        REQUIRE(decode(r.rank, r.table) == m);
        // the same message over its own alphabet has the same rank
        if (n > 0) CHECK(encode(m, Alphabet::of(m)).rank == r.rank);
    }
}

TEST_CASE("two-symbol encode and decode equal the binary codec") {
    std::mt19937_64 rng(29);
    const PascalCache cache(600);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 600)(rng);
        const double density = std::uniform_real_distribution<double>(0, 1)(rng);
        std::vector<std::uint8_t> bits(n);
        std::vector<Symbol> symbols(n);
        for (std::size_t i = 0; i < n; ++i) {
            bits[i] = std::bernoulli_distribution(density)(rng) ? 1 : 0;
            symbols[i] = bits[i];
        }
        const auto general = encode(symbols, Alphabet::binary());
        const auto binary = encode_binary(bits, cache);
        REQUIRE(general.rank == binary.rank);
        CHECK(general.table.count(0) == binary.zeros);
        CHECK(general.table.count(1) == binary.ones);

        const auto back = decode_binary(binary.rank, binary.zeros, binary.ones, cache);
        CHECK(back == bits);
        const auto back_general = decode(general.rank, general.table);
        CHECK(std::equal(back_general.begin(), back_general.end(), bits.begin(), bits.end()));
    }
}

TEST_CASE("stream encoder consumes a forward-only input") {
    std::istringstream in("mississippi river");
    StreamEncoder enc(Alphabet::bytes());
    for (auto it = std::istreambuf_iterator<char>(in); it != std::istreambuf_iterator<char>(); ++it) {
        enc.push(static_cast<unsigned char>(*it));
    }
    const auto expected = encode(symbols_from_text("mississippi river"), Alphabet::bytes());
    CHECK(enc.rank() == expected.rank);
    const auto done = std::move(enc).finish();
    CHECK(done.table == expected.table);
}

TEST_CASE("distinct permutations get distinct ranks") {
    const FrequencyTable table(test::first_symbols(4), {2, 2, 1, 2});
    const auto p = permutation_count(table).get_ui();
    std::set<std::vector<Symbol>> seen;
    for (unsigned long l = 0; l < p; ++l) {
        auto m = decode(l, table);
        CHECK(encode(m, table.alphabet()).rank == l);
        seen.insert(std::move(m));
    }
    CHECK(seen.size() == p);
}

TEST_CASE("roundtrip on skewed symbol distributions") {
    std::mt19937_64 rng(31);
    const Alphabet bytes = Alphabet::bytes();
    for (int trial = 0; trial < 200; ++trial) {
        const double p = std::uniform_real_distribution<double>(0.01, 0.9)(rng);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3000)(rng);
        std::geometric_distribution<Symbol> pick(p);
        std::vector<Symbol> m(n);
        for (auto& s : m) s = std::min<Symbol>(pick(rng), 255);
        const auto r = encode(m, bytes);
        REQUIRE(decode(r.rank, r.table) == m);
    }
    // extreme ranks of a large multiset
    const FrequencyTable table(test::first_symbols(3), {2000, 1, 1500});
    const BigUint p = permutation_count(table);
    for (const BigUint& l : {BigUint(0), BigUint(1), BigUint(p - 1), BigUint(p / 2), BigUint(p / 3)}) {
        CHECK(encode(decode(l, table), table.alphabet()).rank == l);
    }
}

TEST_CASE("stream encoder rank is the rank of the prefix seen so far") {
    std::mt19937_64 rng(37);
    const auto m = test::random_message(rng, 40, 300);
    StreamEncoder enc(test::first_symbols(40));
    for (std::size_t i = 0; i < m.size(); ++i) {
        enc.push(m[i]);
        if (i % 37 == 0) {
            CHECK(enc.rank() == encode(std::span(m).first(i + 1), test::first_symbols(40)).rank);
        }
    }
}
