#include <iostream>

#include <CLI11.hpp>

#include "cbe/cli.hpp"

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    using cbe::cli::Command;
    cbe::cli::CliConfig config;

    CLI::App app{"cbe: lossless codec storing a message as its rank among the permutations of its symbols"};
    app.require_subcommand(1);

    const std::map<std::string, cbe::SymbolMode> modes{{"byte", cbe::SymbolMode::byte}, {"bit", cbe::SymbolMode::bit}};
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("-m,--mode", config.mode, "symbol mode: byte or bit")
            ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    };
    auto add_io = [&](CLI::App* sub, bool with_output) {
        sub->add_option("input", config.input, "input file, - for standard input");
        if (with_output) sub->add_option("-o,--output", config.output, "output file, - for standard output");
    };
    auto add_threads = [&](CLI::App* sub) {
        sub->add_option("-j,--threads", config.threads, "blocks processed in parallel")->check(CLI::Range(1u, 256u));
    };

    auto* compress = app.add_subcommand("compress", "compress a file into an archive");
    add_io(compress, true);
    add_mode(compress);
    add_threads(compress);
    compress->add_option("-b,--block-size", config.block_size, "symbols per block");

    auto* decompress = app.add_subcommand("decompress", "restore the original bytes from an archive");
    add_io(decompress, true);
    add_threads(decompress);

    auto* stats = app.add_subcommand("stats", "print entropy and size statistics as key=value lines");
    add_io(stats, false);
    add_mode(stats);
    stats->add_option("-b,--block-size", config.block_size, "symbols per block");

    auto* rank = app.add_subcommand("rank", "print the rank of a message and its frequency list");
    rank->add_option("message", config.message, "text, or a binary numeral in bit mode")->required();
    add_mode(rank);

    auto* unrank = app.add_subcommand("unrank", "print the message with a given rank");
    unrank->add_option("index", config.index, "decimal rank")->required();
    unrank->add_option("frequencies", config.freq_spec, "e.g. a=3,b=1,n=2")->required();
    add_mode(unrank);

    auto* selftest = app.add_subcommand("selftest", "check the codec against the reference examples");
    selftest->add_flag("--printed-order", config.printed_order,
                       "run the binary encoder with the add-before-increment order (expected to fail)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cbe::cli::kUsage;
    }

    if (compress->parsed()) config.command = Command::compress;
    else if (decompress->parsed()) config.command = Command::decompress;
    else if (stats->parsed()) config.command = Command::stats;
    else if (rank->parsed()) config.command = Command::rank;
    else if (unrank->parsed()) config.command = Command::unrank;
    else config.command = Command::selftest;

    return cbe::cli::run(config, std::cerr);
}
