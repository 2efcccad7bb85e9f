#include <CLI11.hpp>

#include <iostream>

#include "intseq/cli.hpp"

namespace {

using intseq::cli::CliConfig;
using intseq::cli::Subcommand;

void add_common(CLI::App* sub, CliConfig& cfg, bool needs_algorithm) {
    sub->add_option("--n", cfg.n, "number of terms (largest n for bench)")->required();
    if (needs_algorithm) {
        sub->add_option("--algorithm", cfg.algorithm,
                        "algorithm id, or all / all_ulam / all_hamming / all_primes");
        sub->add_option_function<std::vector<intseq::Value>>(
               "--factors", [&cfg](const std::vector<intseq::Value>& f) { cfg.factors = f; },
               "factor base for hamming algorithms")
            ->expected(1, -1)
            ->delimiter(',');
    }
    sub->add_option_function<std::string>(
        "--output", [&cfg](const std::string& p) { cfg.output = p; }, "write to this file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ulam, Hamming and prime sequence generators"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto* generate = app.add_subcommand("generate", "print the first n terms");
    add_common(generate, cfg, true);

    auto* verify = app.add_subcommand("verify", "cross-check generators against brute force");
    add_common(verify, cfg, true);
    verify->add_option_function<std::uint64_t>(
              "--inject-fault", [&cfg](std::uint64_t i) { cfg.fault_index = i; },
              "corrupt this term of the first algorithm (self-test)")
        ->group("");

    auto* bench = app.add_subcommand("bench", "time algorithms over n/8, n/4, n/2, n");
    add_common(bench, cfg, true);
    bench->add_option("--repetitions", cfg.repetitions, "timed runs per point (median)")
        ->default_val(3);

    auto* stats = app.add_subcommand("stats", "Ulam density statistics up to the n-th term");
    add_common(stats, cfg, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return intseq::cli::kUsage;
    }

    if (*generate) cfg.subcommand = Subcommand::generate;
    if (*verify) cfg.subcommand = Subcommand::verify;
    if (*bench) cfg.subcommand = Subcommand::bench;
    if (*stats) cfg.subcommand = Subcommand::stats;
    return intseq::cli::run(cfg, std::cout, std::cerr);
}
