#include "cbe/big_uint.hpp"

#include <cmath>
#include <stdexcept>

namespace cbe {

std::size_t bit_length(const BigUint& x) {
    if (sgn(x) == 0) return 0;
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

double log2_real(const BigUint& x) {
    if (sgn(x) <= 0) throw std::domain_error("log2_real of a non-positive value");
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
    return std::log2(mantissa) + static_cast<double>(exponent);
}

std::vector<std::uint8_t> to_bytes_be(const BigUint& x, std::size_t width) {
    const std::size_t needed = (bit_length(x) + 7) / 8;
    if (needed > width) throw std::length_error("value does not fit in the requested width");
    std::vector<std::uint8_t> out(width, 0);
    if (needed == 0) return out;
    std::size_t written = 0;
    mpz_export(out.data() + (width - needed), &written, 1, 1, 1, 0, x.get_mpz_t());
    return out;
}

BigUint from_bytes_be(std::span<const std::uint8_t> bytes) {
    BigUint x;
    if (!bytes.empty()) mpz_import(x.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
    return x;
}

std::string to_decimal(const BigUint& x) { return x.get_str(10); }

BigUint parse_decimal(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    for (char c : text) {
        if (c < '0' || c > '9') throw std::invalid_argument("not a decimal number: " + std::string(text));
    }
    return BigUint(std::string(text), 10);
}

}  // namespace cbe
