#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cbe {

/// Base class for every error raised by the codec library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A message symbol that is not a member of the working alphabet.
class SymbolNotInAlphabet : public Error {
public:
    SymbolNotInAlphabet(std::uint32_t symbol, std::size_t position)
        : Error("symbol " + std::to_string(symbol) + " at position " + std::to_string(position) +
                " is not in the alphabet"),
          symbol_(symbol),
          position_(position) {}

    std::uint32_t symbol() const noexcept { return symbol_; }
    std::size_t position() const noexcept { return position_; }

private:
    std::uint32_t symbol_;
    std::size_t position_;
};

/// A rank that is not below the permutation count of its frequency table.
class InvalidIndex : public Error {
public:
    using Error::Error;
};

enum class FormatErrc {
    bad_magic,
    unknown_mode,
    truncated,
    non_canonical_varint,
    varint_overflow,
    bad_frequency_table,
    payload_length_mismatch,
    index_out_of_range,
    misaligned_bits,
    trailing_data,
};

const char* to_string(FormatErrc code) noexcept;

/// Malformed or corrupted archive. Each class of damage has its own code.
class FormatError : public Error {
public:
    FormatError(FormatErrc code, const std::string& detail)
        : Error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

    FormatErrc code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    FormatErrc code_;
    std::string detail_;
};

/// Failure reading or writing an underlying stream.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace cbe
