#include "cbe/cli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "cbe/errors.hpp"
#include "cbe/rank_codec.hpp"
#include "cbe/selftest.hpp"

namespace cbe::cli {

namespace {

std::string read_all(std::istream& in) {
    std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) throw IoError("read failure on input");
    return data;
}

std::string fixed(double v) {
    if (std::isinf(v)) return "inf";
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << v;
    return os.str();
}

bool plain_symbol(Symbol s) { return s > 0x20 && s < 0x7F && s != '=' && s != ','; }

Symbol parse_symbol(std::string_view token) {
    if (token.size() == 1) return static_cast<unsigned char>(token[0]);
    if (token.size() == 4 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X')) {
        unsigned value = 0;
        for (char ch : token.substr(2)) {
            value <<= 4;
            if (ch >= '0' && ch <= '9') value |= static_cast<unsigned>(ch - '0');
            else if (ch >= 'a' && ch <= 'f') value |= static_cast<unsigned>(ch - 'a' + 10);
            else if (ch >= 'A' && ch <= 'F') value |= static_cast<unsigned>(ch - 'A' + 10);
            else throw UsageError("bad hex symbol '" + std::string(token) + "'");
        }
        return value;
    }
    throw UsageError("symbol must be one character or 0xHH, got '" + std::string(token) + "'");
}

template <class Fn>
int guarded(std::ostream& err, Fn fn) {
    try {
        return fn();
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const InvalidIndex& e) {
        err << "error: index out of range: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SymbolNotInAlphabet& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace

void validate(const CliConfig& config) {
    if (config.block_size == 0) throw UsageError("block size must be at least 1");
    if (config.block_size > kMaxBlockSize) throw UsageError("block size exceeds " + std::to_string(kMaxBlockSize));
    const bool wants_spec = config.command == Command::unrank;
    if (wants_spec && config.freq_spec.empty()) throw UsageError("unrank requires a frequency list");
    if (!wants_spec && !config.freq_spec.empty()) throw UsageError("a frequency list is only accepted by unrank");
}

FrequencyTable parse_freq_spec(std::string_view spec) {
    std::map<Symbol, Count> entries;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', start), spec.size());
        const std::string_view item = spec.substr(start, comma - start);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
            throw UsageError("malformed frequency entry '" + std::string(item) + "'");
        }
        const Symbol symbol = parse_symbol(item.substr(0, eq));
        const std::string_view digits = item.substr(eq + 1);
        if (!std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
            throw UsageError("malformed count in '" + std::string(item) + "'");
        }
        Count count = 0;
        try {
            count = std::stoull(std::string(digits));
        } catch (const std::out_of_range&) {
            throw UsageError("count too large in '" + std::string(item) + "'");
        }
        if (!entries.emplace(symbol, count).second) throw UsageError("duplicate symbol in frequency list");
        start = comma + 1;
    }
    std::vector<Symbol> symbols;
    std::vector<Count> counts;
    for (const auto& [s, c] : entries) {
        symbols.push_back(s);
        counts.push_back(c);
    }
    return FrequencyTable(Alphabet(std::move(symbols)), std::move(counts));
}

std::string format_freq_spec(const FrequencyTable& table) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < table.alphabet().size(); ++k) {
        if (table.count(k) == 0) continue;
        if (!first) os << ',';
        first = false;
        const Symbol s = table.alphabet()[k];
        if (plain_symbol(s)) {
            os << static_cast<char>(s);
        } else {
            os << "0x" << std::hex << std::setw(2) << std::setfill('0') << s << std::dec << std::setfill(' ');
        }
        os << '=' << table.count(k);
    }
    return os.str();
}

int run_compress(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        compress_stream(in, out, CompressOptions{config.block_size, config.mode, config.threads});
        out.flush();
        if (!out) throw IoError("write failure on output");
        return kOk;
    });
}

int run_decompress(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        decompress_stream(in, out, config.threads);
        out.flush();
        if (!out) throw IoError("write failure on output");
        return kOk;
    });
}

int run_stats(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::string data = read_all(in);
        std::vector<Count> counts(config.mode == SymbolMode::byte ? 256 : 2, 0);
        for (unsigned char byte : data) {
            if (config.mode == SymbolMode::byte) {
                ++counts[byte];
            } else {
                const int ones = std::popcount(static_cast<unsigned>(byte));
                counts[1] += static_cast<Count>(ones);
                counts[0] += static_cast<Count>(8 - ones);
            }
        }
        const Alphabet alphabet = config.mode == SymbolMode::byte ? Alphabet::bytes() : Alphabet::binary();
        const MessageStats s = compute_stats(FrequencyTable(alphabet, std::move(counts)));

        std::istringstream replay(data);
        std::ostringstream sink;
        const ArchiveSummary a =
            compress_stream(replay, sink, CompressOptions{config.block_size, config.mode, config.threads});

        const double input_bits = 8.0 * static_cast<double>(data.size());
        const double archive_bits = 8.0 * static_cast<double>(a.archive_bytes);
        out << "n=" << s.n << '\n'
            << "t_effective=" << s.t_effective << '\n'
            << "entropy_bits_per_symbol=" << fixed(s.entropy_bits_per_symbol) << '\n'
            << "shannon_total_bits=" << fixed(s.shannon_total_bits) << '\n'
            << "log2_permutations=" << fixed(s.rank_bound_bits_real) << '\n'
            << "rank_bound_bits=" << s.rank_bound_bits_exact << '\n'
            << "naive_bits=" << fixed(s.naive_bits) << '\n'
            << "compression_ratio=" << fixed(s.compression_ratio) << '\n'
            << "space_saving_percent=" << fixed(s.space_saving_percent) << '\n'
            << "blocks=" << a.blocks << '\n'
            << "payload_bits=" << a.payload_bits << '\n'
            << "payload_bytes=" << a.payload_bytes << '\n'
            << "header_bytes=" << a.header_bytes << '\n'
            << "total_archive_bytes=" << a.archive_bytes << '\n'
            << "archive_ratio=" << fixed(compression_ratio(input_bits, archive_bits)) << '\n'
            << "archive_space_saving_percent="
            << (input_bits > 0 ? fixed(space_saving_percent(input_bits, archive_bits)) : fixed(0.0)) << '\n';
        return kOk;
    });
}

int run_rank(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (config.mode == SymbolMode::bit) {
            const auto r = encode_binary(bits_from_numeral(config.message));
            out << to_decimal(r.rank) << "  0=" << r.zeros << ",1=" << r.ones << '\n';
            return kOk;
        }
        const auto symbols = symbols_from_text(config.message);
        if (symbols.empty()) {
            out << "0  \n";
            return kOk;
        }
        const auto r = encode(symbols, Alphabet::of(symbols));
        out << to_decimal(r.rank) << "  " << format_freq_spec(r.table) << '\n';
        return kOk;
    });
}

int run_unrank(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        BigUint index;
        try {
            index = parse_decimal(config.index);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        const FrequencyTable table = parse_freq_spec(config.freq_spec);
        if (config.mode == SymbolMode::bit) {
            Count zeros = 0;
            Count ones = 0;
            for (std::size_t k = 0; k < table.alphabet().size(); ++k) {
                const Symbol s = table.alphabet()[k];
                if (s == '0' || s == 0) zeros += table.count(k);
                else if (s == '1' || s == 1) ones += table.count(k);
                else throw UsageError("bit mode frequency list may only name 0 and 1");
            }
            out << numeral_from_bits(decode_binary(index, zeros, ones)) << '\n';
            return kOk;
        }
        out << text_from_symbols(decode(index, table)) << '\n';
        return kOk;
    });
}

int run_selftest(const CliConfig& config, std::ostream& out, std::ostream& err) {
    const auto order = config.printed_order ? BinaryAddOrder::add_then_increment : BinaryAddOrder::increment_then_add;
    bool all = true;
    for (const auto& r : run_selftest_groups(order)) {
        if (r.passed) {
            out << "PASS " << r.group << '\n';
        } else {
            all = false;
            out << "FAIL " << r.group << ": " << r.detail << '\n';
            err << "selftest group " << r.group << " failed: " << r.detail << '\n';
        }
    }
    return all ? kOk : kSelftestFailed;
}

int run(const CliConfig& config, std::ostream& err) {
    try {
        validate(config);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    switch (config.command) {
        case Command::rank: return run_rank(config, std::cout, err);
        case Command::unrank: return run_unrank(config, std::cout, err);
        case Command::selftest: return run_selftest(config, std::cout, err);
        default: break;
    }

    std::ifstream file_in;
    std::istream* in = &std::cin;
    if (config.input != "-") {
        file_in.open(config.input, std::ios::binary);
        if (!file_in) {
            err << "error: cannot open input '" << config.input << "'\n";
            return kIo;
        }
        in = &file_in;
    }

    std::ofstream file_out;
    std::ostream* out = &std::cout;
    if (config.output != "-" && config.command != Command::stats) {
        file_out.open(config.output, std::ios::binary | std::ios::trunc);
        if (!file_out) {
            err << "error: cannot open output '" << config.output << "'\n";
            return kIo;
        }
        out = &file_out;
    }

    switch (config.command) {
        case Command::compress: return run_compress(config, *in, *out, err);
        case Command::decompress: return run_decompress(config, *in, *out, err);
        case Command::stats: return run_stats(config, *in, *out, err);
        default: return kUsage;
    }
}

}  // namespace cbe::cli
