#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace cbe {

/// Arbitrary-precision unsigned integer used for ranks and coefficients.
using BigUint = mpz_class;

/// Number of significant bits; 0 for zero.
std::size_t bit_length(const BigUint& x);

/// log2(x) as a double, accurate for values far beyond double range. x must be > 0.
double log2_real(const BigUint& x);

/// Big-endian bytes of x, left-padded with zeros to exactly `width` bytes.
/// Throws std::length_error if x does not fit.
std::vector<std::uint8_t> to_bytes_be(const BigUint& x, std::size_t width);

BigUint from_bytes_be(std::span<const std::uint8_t> bytes);

std::string to_decimal(const BigUint& x);

/// Parses a non-negative decimal integer. Throws std::invalid_argument on bad input.
BigUint parse_decimal(std::string_view text);

}  // namespace cbe
