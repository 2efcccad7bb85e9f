#pragma once

// Subcommand bodies for the intseq tool. Argument parsing lives in the
// executable; everything here takes a parsed config and two streams so the
// tests can drive it directly.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "intseq/bench.hpp"
#include "intseq/hamming.hpp"
#include "intseq/stream_core.hpp"
#include "intseq/ulam.hpp"

namespace intseq::cli {

enum class Subcommand { generate, verify, bench, stats };

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

struct CliConfig {
    Subcommand subcommand = Subcommand::generate;
    std::string algorithm = "all";
    std::uint64_t n = 0;
    std::optional<std::vector<Value>> factors;
    std::optional<std::string> output;
    unsigned repetitions = 3;
    // Test hook for verify: adds 1 to this (1-based) term of the first
    // algorithm checked.
    std::optional<std::uint64_t> fault_index;
};

/// Smallest --n accepted by bench; the grid starts at n/8.
inline constexpr std::uint64_t kBenchMinN = 64;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline bool is_selector(std::string_view s) {
    return s == "all" || s == "all_ulam" || s == "all_hamming" || s == "all_primes";
}

// "all" means the Ulam family, the one the bench comparisons are about.
inline std::vector<std::string> resolve(std::string_view selection) {
    if (selection == "all" || selection == "all_ulam") return family_ids(Family::ulam);
    if (selection == "all_hamming") return family_ids(Family::hamming);
    if (selection == "all_primes") return family_ids(Family::primes);
    return {find_algorithm(selection).id};
}

inline std::optional<FactorBase> factor_base_for(const CliConfig& cfg,
                                                 std::span<const std::string> ids) {
    bool any_hamming = false;
    for (const auto& id : ids) any_hamming |= find_algorithm(id).family == Family::hamming;
    if (any_hamming && !cfg.factors) throw UsageError("hamming algorithms need --factors");
    if (!any_hamming && cfg.factors) throw UsageError("--factors only applies to hamming algorithms");
    if (!cfg.factors) return std::nullopt;
    try {
        return FactorBase(*cfg.factors);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// Drops hamming_generative_pair from a family run when the base is not a pair.
inline std::vector<std::string> applicable(std::vector<std::string> ids,
                                           const std::optional<FactorBase>& base,
                                           std::ostream& err) {
    if (ids.size() < 2 || !base || base->size() == 2) return ids;
    std::erase_if(ids, [&](const std::string& id) {
        if (id != "hamming_generative_pair") return false;
        err << "note: skipping hamming_generative_pair (needs exactly two factors)\n";
        return true;
    });
    return ids;
}

inline std::vector<Value> first_terms(const std::string& id, std::uint64_t n,
                                      const std::optional<FactorBase>& base) {
    Generator g = find_algorithm(id).make(base);
    return take(g, n);
}

struct Divergence {
    std::uint64_t index;  // 1-based
    std::optional<Value> expected;
    std::optional<Value> got;
    std::string what;
};

inline std::string show(const std::optional<Value>& v) {
    return v ? std::to_string(*v) : std::string("<none>");
}

// Ulam definition checked directly: every listed term has exactly one
// representation over the terms before it, every skipped integer does not.
inline std::optional<Divergence> check_ulam_oracle(std::span<const Value> terms) {
    const Value seeds[] = {1, 2};
    for (std::size_t i = 0; i < 2 && i < terms.size(); ++i) {
        if (terms[i] != seeds[i]) return Divergence{i + 1, seeds[i], terms[i], "seed"};
    }
    std::vector<Value> before;
    std::size_t i = 0;
    Value z = 1;
    while (i < terms.size()) {
        const Value t = terms[i];
        if (t < z) return Divergence{i + 1, std::nullopt, t, "not increasing"};
        for (; z < t; ++z) {
            if (z > 2 && count_representations(z, before) == 1) {
                return Divergence{i + 1, z, t, "skipped an integer with one representation"};
            }
        }
        if (t > 2 && count_representations(t, before) != 1) {
            return Divergence{i + 1, std::nullopt, t, "term does not have exactly one representation"};
        }
        before.push_back(t);
        ++i;
        z = t + 1;
    }
    return std::nullopt;
}

// v membership from its definition against an independently built Ulam prefix.
inline std::optional<Divergence> check_v_oracle(std::span<const Value> terms) {
    if (terms.empty()) return std::nullopt;
    std::vector<Value> ulam = {1, 2};
    std::size_t i = 0;
    for (Value z = 3; i < terms.size(); ++z) {
        const std::size_t reps = count_representations(z, ulam);
        if (reps == 1) ulam.push_back(z);
        const bool member = reps == 0;
        if (member && terms[i] != z) return Divergence{i + 1, z, terms[i], "v oracle"};
        if (!member && terms[i] == z) return Divergence{i + 1, std::nullopt, z, "v oracle"};
        if (member) ++i;
    }
    return std::nullopt;
}

inline std::optional<Divergence> check_hamming_oracle(std::span<const Value> terms,
                                                      const FactorBase& base) {
    Value z = 1;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Value t = terms[i];
        if (t < z) return Divergence{i + 1, std::nullopt, t, "not increasing"};
        for (; z < t; ++z) {
            if (is_composite_of(base, z)) return Divergence{i + 1, z, t, "skipped a member"};
        }
        if (!is_composite_of(base, t)) return Divergence{i + 1, std::nullopt, t, "not a member"};
        z = t + 1;
    }
    return std::nullopt;
}

inline bool is_prime_by_division(Value n) {
    if (n < 2) return false;
    for (Value d = 2; d <= n / d; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::optional<Divergence> check_primes_oracle(std::span<const Value> terms) {
    Value z = 2;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Value t = terms[i];
        if (t < z) return Divergence{i + 1, std::nullopt, t, "not increasing"};
        for (; z < t; ++z) {
            if (is_prime_by_division(z)) return Divergence{i + 1, z, t, "skipped a prime"};
        }
        if (!is_prime_by_division(t)) return Divergence{i + 1, std::nullopt, t, "not prime"};
        z = t + 1;
    }
    return std::nullopt;
}

inline std::optional<Divergence> first_difference(std::span<const Value> a,
                                                  std::span<const Value> b) {
    const std::size_t len = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < len; ++i) {
        std::optional<Value> x, y;
        if (i < a.size()) x = a[i];
        if (i < b.size()) y = b[i];
        if (x != y) return Divergence{i + 1, x, y, "prefix mismatch"};
    }
    return std::nullopt;
}

inline std::ostream& open_sink(const CliConfig& cfg, std::ofstream& file, std::ostream& fallback) {
    if (!cfg.output) return fallback;
    file.open(*cfg.output, std::ios::out | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + *cfg.output + "' for writing");
    return file;
}

inline void require_n(const CliConfig& cfg, std::uint64_t min) {
    if (cfg.n < min) {
        throw UsageError("--n must be >= " + std::to_string(min) + ", got " + std::to_string(cfg.n));
    }
}

// Maps exceptions onto exit codes; usage problems are 2, everything else 1.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const UnknownAlgorithmError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace detail

inline int run_generate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        detail::require_n(cfg, 1);
        if (detail::is_selector(cfg.algorithm)) {
            throw UsageError("generate needs a single algorithm, not '" + cfg.algorithm + "'");
        }
        const auto ids = detail::resolve(cfg.algorithm);
        const auto base = detail::factor_base_for(cfg, ids);
        Generator g = find_algorithm(ids.front()).make(base);

        std::ofstream file;
        std::ostream& sink = detail::open_sink(cfg, file, out);
        for (std::uint64_t i = 0; i < cfg.n; ++i) {
            auto v = g.next();
            if (!v) break;
            sink << *v << '\n';
        }
        sink.flush();
        if (!sink) throw std::runtime_error("write failed");
        return int(kOk);
    });
}

inline int run_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const auto ids0 = detail::resolve(cfg.algorithm);
        const Family family = find_algorithm(ids0.front()).family;
        if (family == Family::ulam) detail::require_n(cfg, 3);
        detail::require_n(cfg, 1);
        const auto base = detail::factor_base_for(cfg, ids0);
        const auto ids = detail::applicable(ids0, base, err);

        std::vector<std::vector<Value>> results;
        for (const auto& id : ids) {
            results.push_back(detail::first_terms(id, cfg.n, base));
            if (results.size() == 1 && cfg.fault_index && *cfg.fault_index >= 1 &&
                *cfg.fault_index <= results.front().size()) {
                results.front()[*cfg.fault_index - 1] += 1;
            }
        }

        bool ok = true;
        auto report = [&](const std::string& id, const detail::Divergence& d) {
            ok = false;
            err << "FAIL " << id << ": " << d.what << " at index " << d.index
                << " (expected " << detail::show(d.expected) << ", got " << detail::show(d.got)
                << ")\n";
        };

        for (std::size_t k = 0; k < ids.size(); ++k) {
            const auto& terms = results[k];
            std::optional<detail::Divergence> d;
            if (terms.size() < cfg.n) {
                d = detail::Divergence{terms.size() + 1, std::nullopt, std::nullopt,
                                       "stream ended early"};
            } else if (ids[k] == "non_ulam_v") {
                d = detail::check_v_oracle(terms);
            } else if (family == Family::ulam) {
                d = detail::check_ulam_oracle(terms);
            } else if (family == Family::hamming) {
                d = detail::check_hamming_oracle(terms, *base);
            } else {
                d = detail::check_primes_oracle(terms);
            }
            if (d) {
                report(ids[k], *d);
            } else {
                out << "ok   " << ids[k] << ": oracle check of " << terms.size() << " terms\n";
            }
        }
        for (std::size_t k = 1; k < ids.size(); ++k) {
            if (auto d = detail::first_difference(results[0], results[k])) {
                report(ids[0] + " vs " + ids[k], *d);
            } else {
                out << "ok   " << ids[0] << " == " << ids[k] << " for " << cfg.n << " terms\n";
            }
        }
        out << (ok ? "verify: all checks passed\n" : "verify: FAILED\n");
        return int(ok ? kOk : kFailure);
    });
}

inline int run_bench(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        detail::require_n(cfg, kBenchMinN);
        if (cfg.repetitions < 1) throw UsageError("--repetitions must be >= 1");
        const auto ids0 = detail::resolve(cfg.algorithm);
        const auto base = detail::factor_base_for(cfg, ids0);
        const auto ids = detail::applicable(ids0, base, err);

        const std::uint64_t grid[] = {cfg.n / 8, cfg.n / 4, cfg.n / 2, cfg.n};
        std::vector<BenchSample> samples;
        for (const auto& id : ids) {
            for (std::uint64_t n : grid) samples.push_back(time_algorithm(id, n, cfg.repetitions, base));
        }

        std::ofstream file;
        std::ostream& sink = detail::open_sink(cfg, file, out);
        export_csv(samples, sink);
        if (cfg.output) {
            file.close();
            if (!file) throw std::runtime_error("write to '" + *cfg.output + "' failed");
        }

        // keep stdout pure CSV when it carries the data
        std::ostream& summary = cfg.output ? out : err;
        for (const auto& id : ids) {
            std::vector<BenchSample> mine;
            for (const auto& s : samples) {
                if (s.algorithm == id) mine.push_back(s);
            }
            summary << id << ": exponent ";
            try {
                summary << std::fixed << std::setprecision(2) << growth_exponent(mine) << '\n';
            } catch (const InsufficientDataError& e) {
                summary << "n/a (" << e.what() << ")\n";
            }
        }
        return int(kOk);
    });
}

inline int run_stats(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        detail::require_n(cfg, 2);
        const DensityStats s = density_stats(cfg.n);
        std::ofstream file;
        std::ostream& sink = detail::open_sink(cfg, file, out);
        sink << "n=" << s.n << '\n'
             << "u_n=" << s.u_n << '\n'
             << "ratio=" << std::fixed << std::setprecision(4) << s.ratio << '\n'
             << "nonsum_count=" << s.nonsum_count << '\n';
        sink.flush();
        if (!sink) throw std::runtime_error("write failed");
        return int(kOk);
    });
}

inline int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    switch (cfg.subcommand) {
        case Subcommand::generate: return run_generate(cfg, out, err);
        case Subcommand::verify: return run_verify(cfg, out, err);
        case Subcommand::bench: return run_bench(cfg, out, err);
        case Subcommand::stats: return run_stats(cfg, out, err);
    }
    return kUsage;
}

}  // namespace intseq::cli
