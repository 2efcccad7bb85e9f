#pragma once

// Ulam numbers: u1 = 1, u2 = 2, and each later term is the least integer
// above the previous one that is the sum of two distinct earlier terms in
// exactly one way.
//
// The generators here differ only in cost. The filters test every candidate
// integer; the generative version keeps a queue of pending pair sums. The
// slow variants are intentionally slow: they exist to be timed against the
// fast ones and must keep their complexity class.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "intseq/stream_core.hpp"

namespace intseq {

/// Number of index pairs i < j with prefix[i] + prefix[j] == z. Brute force,
/// used only to check the generators.
[[nodiscard]] inline std::size_t count_representations(Value z, std::span<const Value> prefix) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        for (std::size_t j = i + 1; j < prefix.size(); ++j) {
            if (prefix[i] + prefix[j] == z) ++count;
        }
    }
    return count;
}

/// Ulam terms found so far, optionally with a descending copy kept in step.
class UlamPrefix {
public:
    explicit UlamPrefix(bool keep_reversed) {
        terms_ = {1, 2};
        if (keep_reversed) reversed_ = std::deque<Value>{2, 1};
    }

    void append(Value v) {
        if (v <= terms_.back()) {
            throw std::invalid_argument("UlamPrefix: " + std::to_string(v) +
                                        " does not extend the prefix");
        }
        terms_.push_back(v);
        if (reversed_) reversed_->push_front(v);
    }

    [[nodiscard]] std::span<const Value> terms() const { return terms_; }
    [[nodiscard]] const std::optional<std::deque<Value>>& reversed() const { return reversed_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] Value back() const { return terms_.back(); }

private:
    std::vector<Value> terms_;
    std::optional<std::deque<Value>> reversed_;
};

namespace detail {

// Two-cursor walk: `asc` from the smallest term, `desc` from the largest.
// Stops when the cursors meet, so every pair has distinct positions.
// With kStopAtTwo the walk gives up on the second representation.
template <bool kStopAtTwo, class Descending>
unsigned count_pair_sums(Value n, std::span<const Value> asc, const Descending& desc) {
    unsigned h = 0;
    auto lo = asc.begin();
    auto hi = desc.begin();
    while (lo != asc.end() && hi != desc.end()) {
        if constexpr (kStopAtTwo) {
            if (h == 2) return 2;
        }
        const Value hu = *lo;
        const Value hr = *hi;
        if (hr <= hu) break;
        const Value s = hu + hr;
        if (s == n) {
            ++h;
            ++lo;
            ++hi;
        } else if (s < n) {
            ++lo;
        } else {
            ++hi;
        }
    }
    return h;
}

// reverseK: a fresh descending copy of the first k terms, rebuilt per call.
inline std::vector<Value> reverse_prefix(std::span<const Value> terms) {
    std::vector<Value> r;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) r.push_back(*it);
    return r;
}

/// Shared shell of the filter generators: emits the seeds, then hands each
/// candidate to `Policy::count` until one has exactly one representation.
template <class Policy>
class UlamFilter {
public:
    UlamFilter() : prefix_(Policy::kKeepReversed) {}

    std::optional<Value> next() {
        if (emitted_ < prefix_.size()) return prefix_.terms()[emitted_++];
        for (Value n = checked_add(prefix_.back(), 1);; n = checked_add(n, 1)) {
            if (Policy::count(n, prefix_) == 1) {
                prefix_.append(n);
                ++emitted_;
                return n;
            }
        }
    }

    [[nodiscard]] const UlamPrefix& prefix() const { return prefix_; }

private:
    UlamPrefix prefix_;
    std::size_t emitted_ = 0;
};

struct NaivePolicy {
    static constexpr bool kKeepReversed = false;
    static unsigned count(Value n, const UlamPrefix& p) {
        const auto reversed = reverse_prefix(p.terms());
        return count_pair_sums<false>(n, p.terms(), reversed);
    }
};

struct NoReverseAllSumsPolicy {
    static constexpr bool kKeepReversed = true;
    static unsigned count(Value n, const UlamPrefix& p) {
        return count_pair_sums<false>(n, p.terms(), *p.reversed());
    }
};

struct ReverseStopTwoPolicy {
    static constexpr bool kKeepReversed = false;
    static unsigned count(Value n, const UlamPrefix& p) {
        const auto reversed = reverse_prefix(p.terms());
        return count_pair_sums<true>(n, p.terms(), reversed);
    }
};

// Membership by plain linear scan of the whole prefix (Prelude `elem`).
// Blocks of 32 are compared without branching so the compiler can
// vectorize; the scan is still linear in the prefix length.
inline bool linear_elem(Value x, std::span<const Value> terms) {
    const Value* p = terms.data();
    const std::size_t n = terms.size();
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        unsigned hit = 0;
        for (std::size_t k = 0; k < 32; ++k) hit |= static_cast<unsigned>(p[i + k] == x);
        if (hit) return true;
    }
    for (; i < n; ++i) {
        if (p[i] == x) return true;
    }
    return false;
}

// For each term v below z/2, look z - v up with a linear scan; give up at
// the second hit. Quadratic per candidate, cubic overall.
struct OeisPolicy {
    static constexpr bool kKeepReversed = false;
    static unsigned count(Value z, const UlamPrefix& p) {
        const auto terms = p.terms();
        unsigned e = 0;
        for (Value v : terms) {
            if (z - v <= v) break;
            if (linear_elem(z - v, terms) && ++e == 2) return 2;
        }
        return e;
    }
};

}  // namespace detail

using UlamNaiveFilter = detail::UlamFilter<detail::NaivePolicy>;
using UlamNoReverseAllSums = detail::UlamFilter<detail::NoReverseAllSumsPolicy>;
using UlamReverseStopTwo = detail::UlamFilter<detail::ReverseStopTwoPolicy>;
using UlamOeisCubic = detail::UlamFilter<detail::OeisPolicy>;

/// Incremental prefix and reversed prefix, two-cursor test that abandons a
/// candidate at its second representation.
class UlamOptimizedFilter {
public:
    struct Examination {
        Value candidate;
        unsigned representations;  // saturates at 2
    };

    UlamOptimizedFilter() : prefix_(true) {}

    std::optional<Value> next() {
        if (emitted_ < prefix_.size()) return prefix_.terms()[emitted_++];
        for (;;) {
            const auto e = examine_next();
            if (e.representations == 1) {
                ++emitted_;
                return e.candidate;
            }
        }
    }

    /// Tests the integer after the last one examined (starting at 3) and
    /// appends it to the prefix when it has exactly one representation.
    Examination examine_next() {
        const Value n = next_candidate_;
        next_candidate_ = checked_add(n, 1);
        const unsigned h = detail::count_pair_sums<true>(n, prefix_.terms(), *prefix_.reversed());
        if (h == 1) prefix_.append(n);
        return {n, h};
    }

    [[nodiscard]] const UlamPrefix& prefix() const { return prefix_; }

private:
    UlamPrefix prefix_;
    std::size_t emitted_ = 0;
    Value next_candidate_ = 3;
};

// ---------------------------------------------------------------------------
// Generative approach

struct CandidateEntry {
    Value value;
    std::uint8_t multiplicity;  // 1 = unique so far, 2 = two or more

    friend bool operator==(const CandidateEntry&, const CandidateEntry&) = default;
};

/// Pending sums in strictly increasing value order.
class CandidateQueue {
public:
    CandidateQueue() = default;
    explicit CandidateQueue(std::vector<CandidateEntry> entries) : entries_(std::move(entries)) {
        if (!valid()) throw std::invalid_argument("CandidateQueue: entries violate ordering");
    }

    [[nodiscard]] bool empty() const { return head_ == entries_.size(); }
    [[nodiscard]] std::size_t size() const { return entries_.size() - head_; }
    [[nodiscard]] const CandidateEntry& front() const { return entries_[head_]; }
    void pop_front() { ++head_; }

    [[nodiscard]] std::span<const CandidateEntry> entries() const {
        return std::span<const CandidateEntry>(entries_).subspan(head_);
    }

    /// Strict value order and multiplicities in {1, 2}.
    [[nodiscard]] bool valid() const {
        const auto e = entries();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i].multiplicity < 1 || e[i].multiplicity > 2) return false;
            if (i > 0 && e[i - 1].value >= e[i].value) return false;
        }
        return true;
    }

    /// Merges `sums` (strictly increasing) into the queue, reusing `scratch`.
    void insert(std::span<const Value> sums, std::vector<CandidateEntry>& scratch) {
        scratch.clear();
        scratch.reserve(size() + sums.size());
        auto q = entries_.begin() + static_cast<std::ptrdiff_t>(head_);
        const auto q_end = entries_.end();
        auto s = sums.begin();
        while (s != sums.end() && q != q_end) {
            if (*s < q->value) {
                scratch.push_back({*s++, 1});
            } else if (*s == q->value) {
                scratch.push_back({*s++, 2});
                ++q;
            } else {
                scratch.push_back(*q++);
            }
        }
        for (; s != sums.end(); ++s) scratch.push_back({*s, 1});
        scratch.insert(scratch.end(), q, q_end);
        entries_.swap(scratch);
        head_ = 0;
    }

    friend bool operator==(const CandidateQueue& a, const CandidateQueue& b) {
        return std::ranges::equal(a.entries(), b.entries());
    }

private:
    std::vector<CandidateEntry> entries_;
    std::size_t head_ = 0;
};

/// A sum new to the queue enters as unique; a sum already present becomes a
/// duplicate (and stays one).
[[nodiscard]] inline CandidateQueue candidate_insert(std::span<const Value> sums,
                                                     CandidateQueue queue) {
    std::vector<CandidateEntry> scratch;
    queue.insert(sums, scratch);
    return queue;
}

class UlamGenerative {
public:
    UlamGenerative() : queue_(std::vector<CandidateEntry>{{3, 1}}) { terms_ = {1, 2}; }

    std::optional<Value> next() {
        if (emitted_ < terms_.size()) return terms_[emitted_++];
        if (queue_.empty()) throw std::logic_error("Ulam candidate queue ran dry");
        const CandidateEntry head = queue_.front();
        if (head.multiplicity != 1) throw std::logic_error("Ulam candidate queue head is not unique");
        const Value u = head.value;
        queue_.pop_front();

        sums_.clear();
        for (Value t : terms_) sums_.push_back(checked_add(t, u));
        queue_.insert(sums_, scratch_);
        while (!queue_.empty() && queue_.front().multiplicity != 1) queue_.pop_front();

        terms_.push_back(u);
        ++emitted_;
        return u;
    }

    [[nodiscard]] const CandidateQueue& queue() const { return queue_; }
    [[nodiscard]] std::span<const Value> terms() const { return terms_; }

private:
    std::vector<Value> terms_;
    CandidateQueue queue_;
    std::vector<Value> sums_;
    std::vector<CandidateEntry> scratch_;
    std::size_t emitted_ = 0;
};

/// Integers z >= 3 that are the sum of no pair of distinct Ulam terms below z.
class NonUlamV {
public:
    std::optional<Value> next() {
        for (;;) {
            const auto e = ulam_.examine_next();
            if (e.representations == 0) return e.candidate;
        }
    }

private:
    UlamOptimizedFilter ulam_;
};

inline UlamOeisCubic ulam_oeis_cubic() { return {}; }
inline UlamNaiveFilter ulam_naive_filter() { return {}; }
inline UlamNoReverseAllSums ulam_variant_no_reverse_all_sums() { return {}; }
inline UlamReverseStopTwo ulam_variant_reverse_stop2() { return {}; }
inline UlamOptimizedFilter ulam_optimized_filter() { return {}; }
inline UlamGenerative ulam_generative() { return {}; }
inline NonUlamV non_ulam_v() { return {}; }

}  // namespace intseq
