#pragma once

// Timing harness: a registry of every generator by id, median-of-runs
// timings, log-log growth fits, Ulam density statistics and CSV export.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "intseq/hamming.hpp"
#include "intseq/primes.hpp"
#include "intseq/stream_core.hpp"
#include "intseq/ulam.hpp"

namespace intseq {

enum class Family { ulam, hamming, primes };

struct AlgorithmInfo {
    std::string id;
    Family family;
    std::function<Generator(const std::optional<FactorBase>&)> make;
};

class UnknownAlgorithmError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InsufficientDataError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {

inline const FactorBase& require_base(const std::optional<FactorBase>& base, std::string_view id) {
    if (!base) throw std::invalid_argument(std::string(id) + " needs a factor base");
    return *base;
}

inline Generator make_hamming_pair(const std::optional<FactorBase>& base) {
    const auto& b = require_base(base, "hamming_generative_pair");
    if (b.size() != 2) {
        throw std::invalid_argument("hamming_generative_pair needs exactly two factors");
    }
    return hamming_generative_pair(b.factors()[0], b.factors()[1]);
}

}  // namespace detail

/// Canonical ids in registration order. Ulam entries follow the order
/// slowest to fastest.
inline const std::vector<AlgorithmInfo>& algorithms() {
    using Base = std::optional<FactorBase>;
    static const std::vector<AlgorithmInfo> registry = {
        {"ulam_oeis_cubic", Family::ulam, [](const Base&) -> Generator { return ulam_oeis_cubic(); }},
        {"ulam_naive_filter", Family::ulam,
         [](const Base&) -> Generator { return ulam_naive_filter(); }},
        {"ulam_variant_no_reverse_all_sums", Family::ulam,
         [](const Base&) -> Generator { return ulam_variant_no_reverse_all_sums(); }},
        {"ulam_variant_reverse_stop2", Family::ulam,
         [](const Base&) -> Generator { return ulam_variant_reverse_stop2(); }},
        {"ulam_generative", Family::ulam, [](const Base&) -> Generator { return ulam_generative(); }},
        {"ulam_optimized_filter", Family::ulam,
         [](const Base&) -> Generator { return ulam_optimized_filter(); }},
        {"non_ulam_v", Family::ulam, [](const Base&) -> Generator { return non_ulam_v(); }},
        {"hamming_filter", Family::hamming,
         [](const Base& b) -> Generator {
             return hamming_filter(detail::require_base(b, "hamming_filter"));
         }},
        {"hamming_generative_pair", Family::hamming, detail::make_hamming_pair},
        {"hamming_generative_min_heads", Family::hamming,
         [](const Base& b) -> Generator {
             return hamming_generative_min_heads(
                 detail::require_base(b, "hamming_generative_min_heads"));
         }},
        {"hamming_union_fold", Family::hamming,
         [](const Base& b) -> Generator {
             return hamming_union_fold(detail::require_base(b, "hamming_union_fold"));
         }},
        {"hamming_recursive_products", Family::hamming,
         [](const Base& b) -> Generator {
             return hamming_recursive_products(
                 detail::require_base(b, "hamming_recursive_products"));
         }},
        {"primes_trial_division", Family::primes,
         [](const Base&) -> Generator { return primes_trial_division(); }},
        {"primes_sieve_minus", Family::primes,
         [](const Base&) -> Generator { return primes_sieve_minus(); }},
        {"primes_sieve_composites", Family::primes,
         [](const Base&) -> Generator { return primes_sieve_composites(); }},
    };
    return registry;
}

/// Short names accepted wherever an id is.
inline const std::map<std::string, std::string, std::less<>>& algorithm_aliases() {
    static const std::map<std::string, std::string, std::less<>> aliases = {
        {"ulam_oeis", "ulam_oeis_cubic"},
        {"ulam_naive", "ulam_naive_filter"},
        {"ulam_optimized", "ulam_optimized_filter"},
    };
    return aliases;
}

inline std::string registered_ids() {
    std::string out;
    for (const auto& a : algorithms()) {
        if (!out.empty()) out += ", ";
        out += a.id;
    }
    return out;
}

inline const AlgorithmInfo& find_algorithm(std::string_view id) {
    if (auto it = algorithm_aliases().find(id); it != algorithm_aliases().end()) id = it->second;
    for (const auto& a : algorithms()) {
        if (a.id == id) return a;
    }
    throw UnknownAlgorithmError("unknown algorithm '" + std::string(id) +
                                "'; registered: " + registered_ids());
}

/// The ids that a family selector such as "all" stands for.
inline std::vector<std::string> family_ids(Family family) {
    std::vector<std::string> ids;
    for (const auto& a : algorithms()) {
        if (a.family == family && a.id != "non_ulam_v") ids.push_back(a.id);
    }
    return ids;
}

struct BenchSample {
    std::string algorithm;
    std::uint64_t n;
    std::chrono::nanoseconds elapsed;

    friend bool operator==(const BenchSample&, const BenchSample&) = default;
};

/// Runs a fresh generator up to its n-th term `repetitions` times after one
/// discarded warm-up run; reports the median.
inline BenchSample time_algorithm(std::string_view id, std::uint64_t n, unsigned repetitions,
                                  const std::optional<FactorBase>& base = std::nullopt) {
    const AlgorithmInfo& algo = find_algorithm(id);
    if (n < 1) throw std::invalid_argument("time_algorithm: n must be >= 1");
    if (repetitions < 1) throw std::invalid_argument("time_algorithm: repetitions must be >= 1");

    auto run = [&] {
        const auto start = std::chrono::steady_clock::now();
        Generator g = algo.make(base);
        Value last = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            auto v = g.next();
            if (!v) throw std::runtime_error(algo.id + " ended before term " + std::to_string(n));
            last = *v;
        }
        const auto stop = std::chrono::steady_clock::now();
        // keep the loop observable
        asm volatile("" : : "r"(last) : "memory");
        return std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start);
    };

    run();
    std::vector<std::chrono::nanoseconds> times;
    times.reserve(repetitions);
    for (unsigned r = 0; r < repetitions; ++r) times.push_back(run());
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    const auto median = times.size() % 2 ? times[mid] : (times[mid - 1] + times[mid]) / 2;
    return {algo.id, n, median};
}

/// Samples faster than this carry too much clock noise to fit.
inline constexpr std::chrono::nanoseconds kResolutionFloor = std::chrono::milliseconds(10);

/// Least-squares slope of log2(elapsed) against log2(n), over samples at or
/// above the resolution floor. Needs at least three usable distinct n.
inline double growth_exponent(std::span<const BenchSample> samples) {
    std::vector<std::pair<double, double>> points;
    for (const auto& s : samples) {
        if (s.elapsed < kResolutionFloor || s.n < 1) continue;
        points.emplace_back(std::log2(static_cast<double>(s.n)),
                            std::log2(static_cast<double>(s.elapsed.count())));
    }
    std::vector<double> distinct_n;
    for (const auto& p : points) distinct_n.push_back(p.first);
    std::sort(distinct_n.begin(), distinct_n.end());
    distinct_n.erase(std::unique(distinct_n.begin(), distinct_n.end()), distinct_n.end());
    if (distinct_n.size() < 3) {
        throw InsufficientDataError("growth_exponent: need >= 3 distinct n timed at or above "
                                    "10 ms, have " +
                                    std::to_string(distinct_n.size()));
    }
    double mx = 0, my = 0;
    for (auto [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxy = 0, sxx = 0;
    for (auto [x, y] : points) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxy / sxx;
}

struct DensityStats {
    std::uint64_t n;
    Value u_n;
    double ratio;
    std::uint64_t nonsum_count;  // members of v that are <= u_n
};

inline DensityStats density_stats(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("density_stats: n must be >= 2");
    auto ulam = ulam_optimized_filter();
    Value u_n = 0;
    for (std::uint64_t i = 0; i < n; ++i) u_n = *ulam.next();

    std::uint64_t nonsum = 0;
    auto v = non_ulam_v();
    while (*v.next() <= u_n) ++nonsum;
    return {n, u_n, static_cast<double>(u_n) / static_cast<double>(n), nonsum};
}

inline constexpr std::string_view kCsvHeader = "algorithm,n,elapsed_ns";

inline std::size_t export_csv(std::span<const BenchSample> samples, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& s : samples) {
        out << s.algorithm << ',' << s.n << ',' << s.elapsed.count() << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("export_csv: write to output failed");
    return samples.size();
}

inline std::vector<BenchSample> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::invalid_argument("parse_csv: missing header '" + std::string(kCsvHeader) + "'");
    }
    std::vector<BenchSample> samples;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string id, n, ns;
        if (!std::getline(row, id, ',') || !std::getline(row, n, ',') || !std::getline(row, ns)) {
            throw std::invalid_argument("parse_csv: malformed row '" + line + "'");
        }
        samples.push_back({id, std::stoull(n), std::chrono::nanoseconds(std::stoll(ns))});
    }
    return samples;
}

}  // namespace intseq
