#include "cbe/container.hpp"

#include <algorithm>
#include <future>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "cbe/binomial_engine.hpp"
#include "cbe/errors.hpp"
#include "cbe/rank_codec.hpp"

namespace cbe {

const char* to_string(FormatErrc code) noexcept {
    switch (code) {
        case FormatErrc::bad_magic: return "bad magic";
        case FormatErrc::unknown_mode: return "unknown mode";
        case FormatErrc::truncated: return "truncated archive";
        case FormatErrc::non_canonical_varint: return "non-canonical varint";
        case FormatErrc::varint_overflow: return "varint overflow";
        case FormatErrc::bad_frequency_table: return "bad frequency table";
        case FormatErrc::payload_length_mismatch: return "payload length mismatch";
        case FormatErrc::index_out_of_range: return "rank out of range";
        case FormatErrc::misaligned_bits: return "bit count not a multiple of 8";
        case FormatErrc::trailing_data: return "trailing data after terminator";
    }
    return "format error";
}

namespace {

struct SpanSource {
    std::span<const std::uint8_t>& in;

    bool next(std::uint8_t& b) {
        if (in.empty()) return false;
        b = in.front();
        in = in.subspan(1);
        return true;
    }
    bool read(std::span<std::uint8_t> dst) {
        if (in.size() < dst.size()) return false;
        std::copy_n(in.begin(), dst.size(), dst.begin());
        in = in.subspan(dst.size());
        return true;
    }
};

struct StreamSource {
    std::istream& in;

    bool next(std::uint8_t& b) {
        const auto c = in.get();
        if (c == std::char_traits<char>::eof()) {
            check();
            return false;
        }
        b = static_cast<std::uint8_t>(c);
        return true;
    }
    bool read(std::span<std::uint8_t> dst) {
        in.read(reinterpret_cast<char*>(dst.data()), static_cast<std::streamsize>(dst.size()));
        if (static_cast<std::size_t>(in.gcount()) != dst.size()) {
            check();
            return false;
        }
        return true;
    }
    void check() const {
        if (in.bad()) throw IoError("read failure on archive input");
    }
};

template <class Source>
std::uint64_t read_varint_from(Source& src) {
    std::uint64_t value = 0;
    for (unsigned shift = 0;; shift += 7) {
        std::uint8_t b = 0;
        if (!src.next(b)) throw FormatError(FormatErrc::truncated, "varint cut short");
        const std::uint64_t group = b & 0x7F;
        if (shift == 63 && group > 1) throw FormatError(FormatErrc::varint_overflow, "value exceeds 64 bits");
        if (shift > 63) throw FormatError(FormatErrc::varint_overflow, "value exceeds 64 bits");
        value |= group << shift;
        if ((b & 0x80) == 0) {
            if (b == 0 && shift != 0) throw FormatError(FormatErrc::non_canonical_varint, "redundant zero group");
            return value;
        }
    }
}

template <class Source>
EncodedBlock parse_block_from(Source& src) {
    EncodedBlock block;
    block.n = read_varint_from(src);
    if (block.n == 0) return block;
    if (block.n > kMaxBlockSize) {
        throw FormatError(FormatErrc::bad_frequency_table, "block length " + std::to_string(block.n) + " exceeds limit");
    }
    const std::uint64_t distinct = read_varint_from(src);
    if (distinct == 0 || distinct > 256) {
        throw FormatError(FormatErrc::bad_frequency_table, std::to_string(distinct) + " distinct symbols");
    }
    block.entries.reserve(distinct);
    for (std::uint64_t i = 0; i < distinct; ++i) {
        std::uint8_t symbol = 0;
        if (!src.next(symbol)) throw FormatError(FormatErrc::truncated, "frequency entry cut short");
        block.entries.emplace_back(symbol, read_varint_from(src));
    }
    const std::uint64_t payload_len = read_varint_from(src);
    // log2 P <= 8n for any block, so a longer payload is never valid.
    if (payload_len > block.n) {
        throw FormatError(FormatErrc::payload_length_mismatch, "payload of " + std::to_string(payload_len) + " bytes");
    }
    block.payload.resize(payload_len);
    if (!src.read(block.payload)) throw FormatError(FormatErrc::truncated, "payload cut short");
    return block;
}

const Alphabet& byte_alphabet() {
    static const Alphabet alphabet = Alphabet::bytes();
    return alphabet;
}

const PascalCache& bit_block_cache() {
    static const PascalCache cache(kPascalBlockLimit);
    return cache;
}

std::size_t payload_bytes_for(const BigUint& permutations) { return (payload_bit_length(permutations) + 7) / 8; }

Count block_payload_bits(const EncodedBlock& block) {
    std::vector<Count> counts;
    for (const auto& e : block.entries) counts.push_back(e.second);
    return payload_bit_length(multinomial(counts));
}

template <class In, class Fn>
auto map_blocks(std::vector<In>& items, unsigned threads, Fn fn) {
    using Out = decltype(fn(items.front(), std::size_t{}));
    std::vector<Out> out;
    out.reserve(items.size());
    if (threads <= 1 || items.size() <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i) out.push_back(fn(items[i], i));
        return out;
    }
    std::vector<std::future<Out>> pending;
    for (std::size_t i = 0; i < items.size(); ++i) {
        pending.push_back(std::async(std::launch::async, [&, i] { return fn(items[i], i); }));
    }
    for (auto& f : pending) out.push_back(f.get());
    return out;
}

void write_bytes(std::ostream& out, std::span<const std::uint8_t> bytes) {
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failure on output");
}

}  // namespace

void write_varint(std::uint64_t value, std::vector<std::uint8_t>& out) {
    while (value >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(value | 0x80));
        value >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(value));
}

std::uint64_t read_varint(std::span<const std::uint8_t>& in) {
    SpanSource src{in};
    return read_varint_from(src);
}

EncodedBlock encode_block(std::span<const Symbol> symbols, SymbolMode mode) {
    EncodedBlock block;
    block.n = symbols.size();
    BigUint rank;
    FrequencyTable table(Alphabet::binary());
    if (mode == SymbolMode::bit && symbols.size() <= kPascalBlockLimit) {
        std::vector<std::uint8_t> bits(symbols.size());
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (symbols[i] > 1) throw SymbolNotInAlphabet(symbols[i], i);
            bits[i] = static_cast<std::uint8_t>(symbols[i]);
        }
        auto r = encode_binary(bits, bit_block_cache());
        rank = std::move(r.rank);
        table = FrequencyTable(Alphabet::binary(), {r.zeros, r.ones});
    } else {
        auto r = encode(symbols, mode == SymbolMode::bit ? Alphabet::binary() : byte_alphabet());
        rank = std::move(r.rank);
        table = std::move(r.table);
    }
    for (std::size_t k = 0; k < table.alphabet().size(); ++k) {
        if (table.count(k) != 0) block.entries.emplace_back(static_cast<std::uint8_t>(table.alphabet()[k]), table.count(k));
    }
    block.payload = to_bytes_be(rank, payload_bytes_for(permutation_count(table)));
    return block;
}

std::vector<Symbol> decode_block(const EncodedBlock& block, SymbolMode mode) {
    if (block.n == 0) throw FormatError(FormatErrc::bad_frequency_table, "empty block");
    if (block.n > kMaxBlockSize) throw FormatError(FormatErrc::bad_frequency_table, "block too long");
    if (block.entries.empty()) throw FormatError(FormatErrc::bad_frequency_table, "no entries");
    std::vector<Symbol> symbols;
    std::vector<Count> counts;
    Count total = 0;
    for (std::size_t i = 0; i < block.entries.size(); ++i) {
        const auto [symbol, count] = block.entries[i];
        if (i > 0 && symbol <= block.entries[i - 1].first) {
            throw FormatError(FormatErrc::bad_frequency_table, "entries not strictly ascending");
        }
        if (count == 0) throw FormatError(FormatErrc::bad_frequency_table, "zero count entry");
        if (mode == SymbolMode::bit && symbol > 1) {
            throw FormatError(FormatErrc::bad_frequency_table, "symbol " + std::to_string(symbol) + " in bit mode");
        }
        if (count > std::numeric_limits<Count>::max() - total) {
            throw FormatError(FormatErrc::bad_frequency_table, "counts overflow");
        }
        total += count;
        symbols.push_back(symbol);
        counts.push_back(count);
    }
    if (total != block.n) {
        throw FormatError(FormatErrc::bad_frequency_table,
                          "counts sum to " + std::to_string(total) + ", block length " + std::to_string(block.n));
    }
    const FrequencyTable table(Alphabet(std::move(symbols)), std::move(counts), block.n);
    const BigUint permutations = permutation_count(table);
    const std::size_t expected = payload_bytes_for(permutations);
    if (block.payload.size() != expected) {
        throw FormatError(FormatErrc::payload_length_mismatch, "expected " + std::to_string(expected) + " bytes, found " +
                                                                   std::to_string(block.payload.size()));
    }
    const BigUint rank = from_bytes_be(block.payload);
    if (rank >= permutations) {
        throw FormatError(FormatErrc::index_out_of_range, "rank is not below " + to_decimal(permutations));
    }
    if (mode == SymbolMode::bit && block.n <= kPascalBlockLimit) {
        const FrequencyTable bits = table.rebased(Alphabet::binary());
        const auto decoded = decode_binary(rank, bits.count(0), bits.count(1), bit_block_cache());
        return std::vector<Symbol>(decoded.begin(), decoded.end());
    }
    return decode(rank, table);
}

void serialize_block(const EncodedBlock& block, std::vector<std::uint8_t>& out) {
    write_varint(block.n, out);
    if (block.n == 0) return;
    write_varint(block.entries.size(), out);
    for (const auto& [symbol, count] : block.entries) {
        out.push_back(symbol);
        write_varint(count, out);
    }
    write_varint(block.payload.size(), out);
    out.insert(out.end(), block.payload.begin(), block.payload.end());
}

EncodedBlock parse_block(std::span<const std::uint8_t>& in) {
    SpanSource src{in};
    return parse_block_from(src);
}

ArchiveSummary compress_stream(std::istream& in, std::ostream& out, const CompressOptions& options) {
    if (options.block_size == 0 || options.block_size > kMaxBlockSize) {
        throw std::invalid_argument("block size must be between 1 and " + std::to_string(kMaxBlockSize));
    }
    if (options.mode != SymbolMode::byte && options.mode != SymbolMode::bit) throw std::invalid_argument("unknown mode");

    ArchiveSummary summary;
    std::vector<std::uint8_t> framing(kMagic.begin(), kMagic.end());
    framing.push_back(static_cast<std::uint8_t>(options.mode));
    write_bytes(out, framing);
    summary.header_bytes += framing.size();

    const std::size_t batch_size = std::max(1u, options.threads);
    std::vector<std::vector<Symbol>> batch;
    std::vector<Symbol> pending;
    std::vector<std::uint8_t> bytes;

    auto flush_batch = [&] {
        auto encoded = map_blocks(batch, options.threads, [&](const std::vector<Symbol>& symbols, std::size_t) {
            return encode_block(symbols, options.mode);
        });
        for (const auto& block : encoded) {
            bytes.clear();
            serialize_block(block, bytes);
            write_bytes(out, bytes);
            summary.blocks += 1;
            summary.payload_bits += block_payload_bits(block);
            summary.payload_bytes += block.payload.size();
            summary.header_bytes += bytes.size() - block.payload.size();
        }
        batch.clear();
    };
    auto cut_blocks = [&](bool final) {
        std::size_t start = 0;
        while (pending.size() - start >= options.block_size || (final && start < pending.size())) {
            const std::size_t len = std::min(options.block_size, pending.size() - start);
            batch.emplace_back(pending.begin() + static_cast<std::ptrdiff_t>(start),
                               pending.begin() + static_cast<std::ptrdiff_t>(start + len));
            start += len;
            if (batch.size() >= batch_size) flush_batch();
        }
        pending.erase(pending.begin(), pending.begin() + static_cast<std::ptrdiff_t>(start));
    };

    std::vector<char> chunk(1 << 16);
    while (in) {
        in.read(chunk.data(), static_cast<std::streamsize>(chunk.size()));
        const auto got = static_cast<std::size_t>(in.gcount());
        if (in.bad()) throw IoError("read failure in block " + std::to_string(summary.blocks + batch.size()));
        summary.input_bytes += got;
        for (std::size_t i = 0; i < got; ++i) {
            const auto byte = static_cast<std::uint8_t>(chunk[i]);
            if (options.mode == SymbolMode::byte) {
                pending.push_back(byte);
            } else {
                for (int b = 7; b >= 0; --b) pending.push_back((byte >> b) & 1u);
            }
        }
        summary.symbols += options.mode == SymbolMode::byte ? got : got * 8;
        cut_blocks(false);
    }
    cut_blocks(true);
    flush_batch();

    const std::uint8_t terminator = 0;
    write_bytes(out, std::span(&terminator, 1));
    summary.header_bytes += 1;
    summary.archive_bytes = summary.header_bytes + summary.payload_bytes;
    return summary;
}

ArchiveSummary decompress_stream(std::istream& in, std::ostream& out, unsigned threads) {
    StreamSource src{in};
    ArchiveSummary summary;

    std::array<std::uint8_t, 5> head{};
    if (!src.read(head)) throw FormatError(FormatErrc::truncated, "archive header cut short");
    if (!std::equal(kMagic.begin(), kMagic.end(), head.begin())) throw FormatError(FormatErrc::bad_magic, "not a CBE1 archive");
    const std::uint8_t mode_byte = head[4];
    if (mode_byte != static_cast<std::uint8_t>(SymbolMode::byte) && mode_byte != static_cast<std::uint8_t>(SymbolMode::bit)) {
        throw FormatError(FormatErrc::unknown_mode, "mode byte " + std::to_string(mode_byte));
    }
    const auto mode = static_cast<SymbolMode>(mode_byte);
    summary.header_bytes = head.size();

    std::uint8_t bit_acc = 0;
    unsigned bit_fill = 0;
    std::vector<std::uint8_t> out_bytes;
    const std::size_t batch_size = std::max(1u, threads);
    std::vector<EncodedBlock> batch;
    std::vector<std::uint8_t> scratch;

    auto flush_batch = [&] {
        const Count first = summary.blocks;
        auto decoded = map_blocks(batch, threads, [&](const EncodedBlock& block, std::size_t i) {
            try {
                return decode_block(block, mode);
            } catch (const FormatError& e) {
                throw FormatError(e.code(), "block " + std::to_string(first + i) + ": " + e.detail());
            }
        });
        for (std::size_t i = 0; i < decoded.size(); ++i) {
            const auto& symbols = decoded[i];
            out_bytes.clear();
            if (mode == SymbolMode::byte) {
                for (Symbol s : symbols) out_bytes.push_back(static_cast<std::uint8_t>(s));
            } else {
                for (Symbol s : symbols) {
                    bit_acc = static_cast<std::uint8_t>((bit_acc << 1) | s);
                    if (++bit_fill == 8) {
                        out_bytes.push_back(bit_acc);
                        bit_acc = 0;
                        bit_fill = 0;
                    }
                }
            }
            write_bytes(out, out_bytes);
            scratch.clear();
            serialize_block(batch[i], scratch);
            summary.blocks += 1;
            summary.symbols += symbols.size();
            summary.input_bytes += out_bytes.size();
            summary.payload_bits += block_payload_bits(batch[i]);
            summary.payload_bytes += batch[i].payload.size();
            summary.header_bytes += scratch.size() - batch[i].payload.size();
        }
        batch.clear();
    };

    for (;;) {
        EncodedBlock block;
        try {
            block = parse_block_from(src);
        } catch (const FormatError& e) {
            throw FormatError(e.code(), "block " + std::to_string(summary.blocks + batch.size()) + ": " + e.detail());
        }
        if (block.n == 0) break;
        batch.push_back(std::move(block));
        if (batch.size() >= batch_size) flush_batch();
    }
    flush_batch();
    summary.header_bytes += 1;

    if (bit_fill != 0) throw FormatError(FormatErrc::misaligned_bits, std::to_string(bit_fill) + " bits left over");
    if (in.peek() != std::char_traits<char>::eof()) throw FormatError(FormatErrc::trailing_data, "bytes follow the terminator");
    src.check();
    summary.archive_bytes = summary.header_bytes + summary.payload_bytes;
    return summary;
}

std::vector<std::uint8_t> compress(std::span<const std::uint8_t> input, const CompressOptions& options) {
    std::istringstream in(std::string(input.begin(), input.end()));
    std::ostringstream out;
    compress_stream(in, out, options);
    const std::string s = std::move(out).str();
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> archive, unsigned threads) {
    std::istringstream in(std::string(archive.begin(), archive.end()));
    std::ostringstream out;
    decompress_stream(in, out, threads);
    const std::string s = std::move(out).str();
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

}  // namespace cbe
