#pragma once

// Prime generators: trial division, a sieve built from nested differences,
// and a sieve that subtracts a stream producing each composite exactly once.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "intseq/stream_core.hpp"

namespace intseq {

class PrimesTrialDivision {
public:
    std::optional<Value> next() {
        if (primes_.empty()) {
            primes_.push_back(2);
            return 2;
        }
        for (Value n = checked_add(primes_.back(), 1);; n = checked_add(n, 1)) {
            if (is_prime(n)) {
                primes_.push_back(n);
                return n;
            }
        }
    }

private:
    [[nodiscard]] bool is_prime(Value n) const {
        for (Value p : primes_) {
            if (p > n / p) return true;
            if (n % p == 0) return false;
        }
        return true;
    }

    std::vector<Value> primes_;
};

/// mySieve (x:xs) = x : mySieve (minus xs (map (x*) (x:xs)))
///
/// Every prime adds one more difference layer that all later numbers pass
/// through. Kept for comparison; it is much slower than trial division.
class PrimesSieveMinus {
public:
    PrimesSieveMinus() : remaining_(naturals_from(2)) {}

    std::optional<Value> next() {
        SharedCursor with_head = share(std::move(remaining_));
        SharedCursor rest = with_head;
        auto x = rest.next();
        if (!x) return x;
        remaining_ = minus(std::move(rest), scaled(std::move(with_head), *x));
        return x;
    }

private:
    Generator remaining_;
};

namespace detail {

// composites (x:xs) = tail p `unionP` allProducts p (union xs c) `unionP` c
//   where p = powers of x, c = composites xs
// Nothing is read from `primes` until the first value is requested.
class CompositesNode {
public:
    explicit CompositesNode(SharedCursor primes) : primes_(std::move(primes)) {}

    std::optional<Value> next() {
        if (!expanded_) {
            expanded_ = true;
            auto x = primes_->next();
            if (!x) {
                primes_.reset();
                return std::nullopt;
            }
            SharedCursor larger_primes = *primes_;
            SharedCursor c = share(CompositesNode(std::move(*primes_)));
            primes_.reset();
            SharedCursor c_for_products = c;

            Geometric tail_powers(checked_mul(*x, *x), *x);
            Generator multipliers = union2(std::move(larger_primes), std::move(c_for_products));
            inner_ = union_left_biased(
                union_left_biased(tail_powers,
                                  all_products(Generator(powers_of(*x)), std::move(multipliers))),
                std::move(c));
        }
        return inner_.next();
    }

private:
    std::optional<SharedCursor> primes_;
    Generator inner_;
    bool expanded_ = false;
};

}  // namespace detail

/// Every composite whose prime factors all come from `primes` (strictly
/// increasing, >= 2), each produced once.
inline Generator composites_of_primes(Generator primes) {
    return detail::CompositesNode(share(std::move(primes)));
}

/// primes = 2 : ([3..] `minus` composites primes), reading its own output.
class PrimesSieveComposites {
public:
    std::optional<Value> next() {
        if (emitted_.empty()) {
            emitted_.push(2);
            return 2;
        }
        if (!rest_) rest_ = minus(naturals_from(3), composites_of_primes(emitted_.reader()));
        auto v = rest_->next();
        if (v) emitted_.push(*v);
        return v;
    }

private:
    EmittedPrefix emitted_;
    std::optional<Generator> rest_;
};

inline PrimesTrialDivision primes_trial_division() { return {}; }
inline PrimesSieveMinus primes_sieve_minus() { return {}; }
inline PrimesSieveComposites primes_sieve_composites() { return {}; }

}  // namespace intseq
