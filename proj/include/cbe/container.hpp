#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "cbe/big_uint.hpp"
#include "cbe/multiset_model.hpp"

namespace cbe {

// Archive layout (all integers are varints unless noted):
//
//   "CBE1" mode:u8
//   block*          n d (symbol:u8 count)*d payload_len payload[payload_len]
//   terminator      n = 0
//
// payload is the rank, big-endian, exactly ceil(ceil(log2 P) / 8) bytes.

inline constexpr std::array<std::uint8_t, 4> kMagic{'C', 'B', 'E', '1'};
inline constexpr std::size_t kDefaultBlockSize = 4096;
/// Bit-mode blocks up to this length use Pascal-table lookups; longer ones use the tracker.
inline constexpr std::size_t kPascalBlockLimit = 1024;
/// Largest block length accepted by either side.
inline constexpr std::size_t kMaxBlockSize = std::size_t{1} << 26;

enum class SymbolMode : std::uint8_t {
    byte = 0x01,
    bit = 0x02,
};

/// Base-128 little-endian groups with a continuation bit.
void write_varint(std::uint64_t value, std::vector<std::uint8_t>& out);
/// Consumes one varint from the front of `in`. Rejects truncation, overflow and
/// non-canonical encodings.
std::uint64_t read_varint(std::span<const std::uint8_t>& in);

struct EncodedBlock {
    Count n = 0;
    std::vector<std::pair<std::uint8_t, Count>> entries;  // nonzero counts, ascending symbol
    std::vector<std::uint8_t> payload;

    friend bool operator==(const EncodedBlock&, const EncodedBlock&) = default;
};

/// Encodes one block of symbols (byte values, or 0/1 in bit mode).
EncodedBlock encode_block(std::span<const Symbol> symbols, SymbolMode mode);
/// Validates the block against its own table and returns the symbols.
std::vector<Symbol> decode_block(const EncodedBlock& block, SymbolMode mode);

void serialize_block(const EncodedBlock& block, std::vector<std::uint8_t>& out);
/// Parses one block or the terminator (returned with n == 0).
EncodedBlock parse_block(std::span<const std::uint8_t>& in);

struct CompressOptions {
    std::size_t block_size = kDefaultBlockSize;
    SymbolMode mode = SymbolMode::byte;
    unsigned threads = 1;
};

struct ArchiveSummary {
    Count input_bytes = 0;
    Count symbols = 0;
    Count blocks = 0;
    Count payload_bits = 0;   // sum of ceil(log2 P) over blocks
    Count payload_bytes = 0;
    Count header_bytes = 0;   // magic, mode, per-block tables and lengths, terminator
    Count archive_bytes = 0;
};

/// Reads `in` to the end, writing the archive to `out`. Throws IoError on stream failure.
ArchiveSummary compress_stream(std::istream& in, std::ostream& out, const CompressOptions& options = {});

/// Throws FormatError for any malformed archive and IoError on stream failure.
ArchiveSummary decompress_stream(std::istream& in, std::ostream& out, unsigned threads = 1);

std::vector<std::uint8_t> compress(std::span<const std::uint8_t> input, const CompressOptions& options = {});
std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> archive, unsigned threads = 1);

}  // namespace cbe
