#pragma once

// Generators for the multiplicative closure C_P of a factor base P: 1 and
// every product of (possibly repeated) elements of P, in increasing order.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "intseq/stream_core.hpp"

namespace intseq {

/// Sorted, duplicate-free, nonempty set of integers >= 2.
class FactorBase {
public:
    explicit FactorBase(std::vector<Value> factors) : factors_(std::move(factors)) {
        if (factors_.empty()) throw std::invalid_argument("factor base must not be empty");
        for (Value f : factors_) {
            if (f < 2) {
                throw std::invalid_argument("factor base elements must be >= 2, got " +
                                            std::to_string(f));
            }
        }
        std::sort(factors_.begin(), factors_.end());
        factors_.erase(std::unique(factors_.begin(), factors_.end()), factors_.end());
    }

    FactorBase(std::initializer_list<Value> factors)
        : FactorBase(std::vector<Value>(factors)) {}

    [[nodiscard]] std::span<const Value> factors() const { return factors_; }
    [[nodiscard]] std::size_t size() const { return factors_.size(); }

    friend bool operator==(const FactorBase&, const FactorBase&) = default;

private:
    std::vector<Value> factors_;
};

namespace detail {

// Exhaustive search over factorizations. The greedy "divide by the first
// factor that fits" shortcut is only exact for pairwise coprime bases; with
// {4, 6} it would reject 36 = 6 * 6.
inline bool closure_contains(std::span<const Value> factors, Value n,
                             std::unordered_set<Value>& rejected) {
    if (n == 1) return true;
    bool divisible = false;
    for (Value f : factors) {
        if (n % f != 0) continue;
        divisible = true;
        const Value rest = n / f;
        if (rejected.contains(rest)) continue;
        if (closure_contains(factors, rest, rejected)) return true;
    }
    if (divisible) rejected.insert(n);
    return false;
}

}  // namespace detail

/// True iff n is a product of zero or more elements of `base`.
[[nodiscard]] inline bool is_composite_of(const FactorBase& base, Value n) {
    if (n == 0) throw std::invalid_argument("is_composite_of: n must be >= 1");
    std::unordered_set<Value> rejected;
    return detail::closure_contains(base.factors(), n, rejected);
}

// ---------------------------------------------------------------------------

/// Reference implementation: test every natural number in turn.
class HammingFilter {
public:
    explicit HammingFilter(FactorBase base) : base_(std::move(base)) {}

    std::optional<Value> next() {
        for (;;) {
            const Value n = candidate_;
            if (n == kMaxValue) throw OverflowError("hamming filter exhausted the 64-bit domain");
            ++candidate_;
            if (is_composite_of(base_, n)) return n;
        }
    }

private:
    FactorBase base_;
    Value candidate_ = 1;
};

/// C_{x,y} with two cursors into the output produced so far.
class HammingPair {
public:
    HammingPair(Value x, Value y) : x_(x), y_(y) {
        if (x < 2 || y <= x) throw std::invalid_argument("hamming pair needs 2 <= x < y");
    }

    std::optional<Value> next() {
        if (out_.empty()) {
            out_.push_back(1);
            return 1;
        }
        const Value fx = checked_mul(x_, out_[cx_]);
        const Value fy = checked_mul(y_, out_[cy_]);
        const Value m = std::min(fx, fy);
        if (fx == m) ++cx_;
        if (fy == m) ++cy_;
        out_.push_back(m);
        return m;
    }

private:
    Value x_;
    Value y_;
    std::vector<Value> out_;
    std::size_t cx_ = 0;
    std::size_t cy_ = 0;
};

/// One cursor per factor; the next value is the least factor * cursor value,
/// and every cursor that produced it moves on. The output buffer is kept
/// whole, so memory grows with the number of terms.
class HammingMinHeads {
public:
    explicit HammingMinHeads(const FactorBase& base)
        : factors_(base.factors().begin(), base.factors().end()), cursors_(factors_.size(), 0) {}

    std::optional<Value> next() {
        if (out_.empty()) {
            out_.push_back(1);
            return 1;
        }
        heads_.resize(factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            heads_[i] = checked_mul(factors_[i], out_[cursors_[i]]);
        }
        const Value m = *std::min_element(heads_.begin(), heads_.end());
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (heads_[i] == m) ++cursors_[i];
        }
        out_.push_back(m);
        return m;
    }

private:
    std::vector<Value> factors_;
    std::vector<std::size_t> cursors_;
    std::vector<Value> heads_;
    std::vector<Value> out_;
};

/// hns = 1 : foldr1 union [map (f*) hns | f <- P], reading its own output.
class HammingUnionFold {
public:
    explicit HammingUnionFold(FactorBase base) : base_(std::move(base)) {}

    std::optional<Value> next() {
        if (emitted_.empty()) {
            emitted_.push(1);
            return 1;
        }
        if (!merged_) {
            std::vector<Generator> streams;
            streams.reserve(base_.size());
            for (Value f : base_.factors()) streams.emplace_back(scaled(emitted_.reader(), f));
            merged_ = union_many(std::move(streams));
        }
        auto v = merged_->next();
        if (v) emitted_.push(*v);
        return v;
    }

private:
    FactorBase base_;
    EmittedPrefix emitted_;
    std::optional<Generator> merged_;
};

namespace detail {

// hammingAux (x:xs) = p `unionP` h `unionP` allProducts p h
//   where p = powers of x, h = hammingAux xs
// Factors must be ascending: each left-biased union relies on x being
// smaller than everything built from the larger factors.
inline Generator hamming_aux(std::span<const Value> factors) {
    if (factors.empty()) return Generator();
    const Value x = factors.front();
    SharedCursor rest = share(hamming_aux(factors.subspan(1)));
    SharedCursor rest_for_products = rest;
    return union_left_biased(union_left_biased(powers_of(x), std::move(rest)),
                             all_products(Generator(powers_of(x)), std::move(rest_for_products)));
}

}  // namespace detail

class HammingRecursiveProducts {
public:
    explicit HammingRecursiveProducts(const FactorBase& base)
        : aux_(detail::hamming_aux(base.factors())) {}

    std::optional<Value> next() {
        if (!started_) {
            started_ = true;
            return 1;
        }
        return aux_.next();
    }

private:
    Generator aux_;
    bool started_ = false;
};

inline HammingFilter hamming_filter(FactorBase base) { return HammingFilter(std::move(base)); }

inline HammingPair hamming_generative_pair(Value x, Value y) { return HammingPair(x, y); }

inline HammingMinHeads hamming_generative_min_heads(const FactorBase& base) {
    return HammingMinHeads(base);
}

inline HammingUnionFold hamming_union_fold(FactorBase base) {
    return HammingUnionFold(std::move(base));
}

inline HammingRecursiveProducts hamming_recursive_products(const FactorBase& base) {
    return HammingRecursiveProducts(base);
}

}  // namespace intseq
