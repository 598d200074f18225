#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cbe/container.hpp"
#include "cbe/multiset_model.hpp"

namespace cbe::cli {

enum class Command { compress, decompress, stats, rank, unrank, selftest };

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIo = 2,
    kFormat = 3,
    kSelftestFailed = 4,
};

struct CliConfig {
    Command command = Command::selftest;
    std::string input = "-";
    std::string output = "-";
    std::size_t block_size = kDefaultBlockSize;
    SymbolMode mode = SymbolMode::byte;
    unsigned threads = 1;
    std::string message;    // rank
    std::string index;      // unrank, decimal
    std::string freq_spec;  // unrank, e.g. "a=3,b=1,n=2"
    bool printed_order = false;  // selftest: run the binary encoder with the printed add order
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws UsageError when block_size is zero or freq_spec presence does not match the command.
void validate(const CliConfig& config);

/// "a=3,b=1,n=2" -> table over the listed symbols. A symbol is one character or 0xHH.
FrequencyTable parse_freq_spec(std::string_view spec);
/// Nonzero entries of `table` in the same syntax.
std::string format_freq_spec(const FrequencyTable& table);

int run_compress(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);
int run_decompress(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);
int run_stats(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);
int run_rank(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_unrank(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_selftest(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Validates, opens input/output ("-" for the standard streams) and dispatches.
int run(const CliConfig& config, std::ostream& err);

}  // namespace cbe::cli
