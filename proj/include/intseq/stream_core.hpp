#pragma once

// Pull-based ordered streams and the set combinators built on them.
//
// A source is anything with `std::optional<Value> next()` that yields a
// strictly increasing sequence; `std::nullopt` marks the end of a finite
// stream. Sources are single-owner: two consumers of one stream must go
// through `share()`, which memoizes the values still needed by some cursor.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace intseq {

using Value = std::uint64_t;

inline constexpr Value kMaxValue = std::numeric_limits<Value>::max();

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Thrown when a self-referential stream asks for an element it has not
/// produced yet. Always indicates a broken definition, never bad input.
class ProductivityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

[[nodiscard]] inline Value checked_mul(Value a, Value b) {
    Value r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("product " + std::to_string(a) + " * " + std::to_string(b) +
                            " exceeds the 64-bit value domain");
    }
    return r;
}

[[nodiscard]] inline Value checked_add(Value a, Value b) {
    Value r = 0;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError("sum " + std::to_string(a) + " + " + std::to_string(b) +
                            " exceeds the 64-bit value domain");
    }
    return r;
}

template <class G>
concept MonotoneSource = std::move_constructible<G> && requires(G& g) {
    { g.next() } -> std::same_as<std::optional<Value>>;
};

/// Type-erased, move-only owner of any MonotoneSource. A default-constructed
/// Generator is an empty stream.
class Generator {
public:
    Generator() = default;

    template <MonotoneSource G>
        requires(!std::same_as<std::remove_cvref_t<G>, Generator>)
    Generator(G source) : impl_(std::make_unique<Model<G>>(std::move(source))) {}

    Generator(Generator&&) noexcept = default;
    Generator& operator=(Generator&&) noexcept = default;

    std::optional<Value> next() { return impl_ ? impl_->next() : std::nullopt; }

private:
    struct Concept {
        virtual ~Concept() = default;
        virtual std::optional<Value> next() = 0;
    };

    template <class G>
    struct Model final : Concept {
        explicit Model(G g) : source(std::move(g)) {}
        std::optional<Value> next() override { return source.next(); }
        G source;
    };

    std::unique_ptr<Concept> impl_;
};

/// Pulls up to `count` values; fewer if the stream ends first.
template <MonotoneSource G>
std::vector<Value> take(G& source, std::size_t count) {
    std::vector<Value> out;
    out.reserve(count);
    while (out.size() < count) {
        auto v = source.next();
        if (!v) break;
        out.push_back(*v);
    }
    return out;
}

template <MonotoneSource G>
    requires(!std::is_lvalue_reference_v<G>)
std::vector<Value> take(G&& source, std::size_t count) {
    G owned(std::move(source));
    return take(owned, count);
}

/// One-element lookahead. The head is fetched on first `peek()`, never earlier.
template <MonotoneSource G>
class Lookahead {
public:
    explicit Lookahead(G source) : source_(std::move(source)) {}

    const std::optional<Value>& peek() {
        if (!fetched_) {
            head_ = source_.next();
            fetched_ = true;
        }
        return head_;
    }

    std::optional<Value> pop() {
        peek();
        fetched_ = false;
        return std::exchange(head_, std::nullopt);
    }

    void drop() {
        peek();
        fetched_ = false;
        head_.reset();
    }

private:
    G source_;
    std::optional<Value> head_;
    bool fetched_ = false;
};

// ---------------------------------------------------------------------------
// Elementary sources

/// Finite, already sorted list of values.
class ValueList {
public:
    ValueList(std::vector<Value> values) : values_(std::move(values)) {
        if (std::adjacent_find(values_.begin(), values_.end(), std::greater_equal<>{}) !=
            values_.end()) {
            throw std::invalid_argument("ValueList: values must be strictly increasing");
        }
    }
    ValueList(std::initializer_list<Value> values) : ValueList(std::vector<Value>(values)) {}

    std::optional<Value> next() {
        if (pos_ == values_.size()) return std::nullopt;
        return values_[pos_++];
    }

private:
    std::vector<Value> values_;
    std::size_t pos_ = 0;
};

/// first, first+step, first+2*step, ...
class Arithmetic {
public:
    explicit Arithmetic(Value first, Value step = 1) : next_(first), step_(step) {
        if (step == 0) throw std::invalid_argument("Arithmetic: step must be positive");
    }

    std::optional<Value> next() {
        if (overflowed_) throw OverflowError("arithmetic progression left the 64-bit domain");
        Value v = next_;
        if (__builtin_add_overflow(next_, step_, &next_)) overflowed_ = true;
        return v;
    }

private:
    Value next_;
    Value step_;
    bool overflowed_ = false;
};

/// first, first*ratio, first*ratio^2, ...
class Geometric {
public:
    Geometric(Value first, Value ratio) : next_(first), ratio_(ratio) {
        if (first == 0 || ratio < 2) {
            throw std::invalid_argument("Geometric: need first >= 1 and ratio >= 2");
        }
    }

    std::optional<Value> next() {
        if (overflowed_) throw OverflowError("geometric progression left the 64-bit domain");
        Value v = next_;
        if (__builtin_mul_overflow(next_, ratio_, &next_)) overflowed_ = true;
        return v;
    }

private:
    Value next_;
    Value ratio_;
    bool overflowed_ = false;
};

inline Arithmetic naturals_from(Value first) { return Arithmetic(first, 1); }

/// x, x^2, x^3, ...
inline Geometric powers_of(Value x) { return Geometric(x, x); }

// ---------------------------------------------------------------------------
// Combinators

/// map (factor *)
template <MonotoneSource G>
class Scaled {
public:
    Scaled(G source, Value factor) : source_(std::move(source)), factor_(factor) {
        if (factor == 0) throw std::invalid_argument("Scaled: factor must be positive");
    }

    std::optional<Value> next() {
        auto v = source_.next();
        if (!v) return v;
        return checked_mul(*v, factor_);
    }

private:
    G source_;
    Value factor_;
};

/// Ordered set union. Equal heads advance both inputs and are emitted once.
template <MonotoneSource A, MonotoneSource B>
class Union {
public:
    Union(A a, B b) : a_(std::move(a)), b_(std::move(b)) {}

    std::optional<Value> next() {
        const auto& x = a_.peek();
        const auto& y = b_.peek();
        if (!x) return b_.pop();
        if (!y) return a_.pop();
        if (*x == *y) {
            b_.drop();
            return a_.pop();
        }
        return *x < *y ? a_.pop() : b_.pop();
    }

    Lookahead<A>& left() { return a_; }
    Lookahead<B>& right() { return b_; }

private:
    Lookahead<A> a_;
    Lookahead<B> b_;
};

/// Union whose first element is taken from `a` without looking at `b`.
///
/// Contract (not checked): the head of `a` is <= every element of `b`.
/// Checking it would force `b` early, which is exactly what self-referential
/// definitions cannot afford.
template <MonotoneSource A, MonotoneSource B>
class LeftBiasedUnion {
public:
    LeftBiasedUnion(A a, B b) : union_(std::move(a), std::move(b)) {}

    std::optional<Value> next() {
        if (!started_) {
            started_ = true;
            first_ = union_.left().pop();
            if (first_) return first_;
        }
        if (first_) {
            // b may open with a copy of a's head
            const auto& y = union_.right().peek();
            if (y && *y == *first_) union_.right().drop();
            first_.reset();
        }
        return union_.next();
    }

private:
    Union<A, B> union_;
    std::optional<Value> first_;
    bool started_ = false;
};

/// Elements of `a` that do not occur in `b`.
template <MonotoneSource A, MonotoneSource B>
class Minus {
public:
    Minus(A a, B b) : a_(std::move(a)), b_(std::move(b)) {}

    std::optional<Value> next() {
        for (;;) {
            const auto& x = a_.peek();
            if (!x) return std::nullopt;
            const auto& y = b_.peek();
            if (!y || *x < *y) return a_.pop();
            if (*x == *y) a_.drop();
            b_.drop();
        }
    }

private:
    Lookahead<A> a_;
    Lookahead<B> b_;
};

template <MonotoneSource A, MonotoneSource B>
Union<A, B> union2(A a, B b) {
    return Union<A, B>(std::move(a), std::move(b));
}

template <MonotoneSource A, MonotoneSource B>
LeftBiasedUnion<A, B> union_left_biased(A a, B b) {
    return LeftBiasedUnion<A, B>(std::move(a), std::move(b));
}

template <MonotoneSource A, MonotoneSource B>
Minus<A, B> minus(A a, B b) {
    return Minus<A, B>(std::move(a), std::move(b));
}

template <MonotoneSource G>
Scaled<G> scaled(G source, Value factor) {
    return Scaled<G>(std::move(source), factor);
}

/// Right fold of `union2` over a nonempty list.
inline Generator union_many(std::vector<Generator> sources) {
    if (sources.empty()) throw std::invalid_argument("union_many: need at least one stream");
    Generator acc = std::move(sources.back());
    sources.pop_back();
    while (!sources.empty()) {
        acc = union2(std::move(sources.back()), std::move(acc));
        sources.pop_back();
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Sharing

/// Copyable cursor into a memoized stream. Every copy reads the full
/// remaining sequence independently; values are pulled from the underlying
/// source once and dropped when no live cursor can reach them anymore.
class SharedCursor {
    struct State {
        explicit State(Generator g) : source(std::move(g)) {}

        Generator source;
        std::deque<Value> buffer;
        std::size_t base = 0;  // absolute index of buffer.front()
        bool exhausted = false;
        bool pulling = false;
        std::vector<std::size_t> positions;  // per cursor slot, kFree when unused
        std::size_t trim_at = 64;
    };

    static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

public:
    /// Starts sharing `source`; the returned cursor is at its first element.
    static SharedCursor over(Generator source) {
        return SharedCursor(std::make_shared<State>(std::move(source)));
    }

    SharedCursor(const SharedCursor& other)
        : state_(other.state_), slot_(acquire(*state_, other.position())) {}

    SharedCursor(SharedCursor&& other) noexcept
        : state_(std::move(other.state_)), slot_(other.slot_) {}

    SharedCursor& operator=(SharedCursor other) noexcept {
        std::swap(state_, other.state_);
        std::swap(slot_, other.slot_);
        return *this;
    }

    ~SharedCursor() {
        if (state_) state_->positions[slot_] = kFree;
    }

    std::optional<Value> next() {
        State& s = *state_;
        const std::size_t pos = s.positions[slot_];
        const std::size_t offset = pos - s.base;
        if (offset == s.buffer.size()) {
            if (s.exhausted) return std::nullopt;
            if (s.pulling) throw ProductivityError("shared stream re-entered while pulling");
            s.pulling = true;
            std::optional<Value> v;
            try {
                v = s.source.next();
            } catch (...) {
                s.pulling = false;
                throw;
            }
            s.pulling = false;
            if (!v) {
                s.exhausted = true;
                return std::nullopt;
            }
            s.buffer.push_back(*v);
        }
        const Value v = s.buffer[offset];
        s.positions[slot_] = pos + 1;
        if (s.buffer.size() >= s.trim_at) trim(s);
        return v;
    }

    /// Number of values currently retained for lagging cursors.
    [[nodiscard]] std::size_t buffered() const { return state_->buffer.size(); }

private:
    explicit SharedCursor(std::shared_ptr<State> state)
        : state_(std::move(state)), slot_(acquire(*state_, 0)) {}

    [[nodiscard]] std::size_t position() const { return state_->positions[slot_]; }

    static std::size_t acquire(State& s, std::size_t pos) {
        for (std::size_t i = 0; i < s.positions.size(); ++i) {
            if (s.positions[i] == kFree) {
                s.positions[i] = pos;
                return i;
            }
        }
        s.positions.push_back(pos);
        return s.positions.size() - 1;
    }

    static void trim(State& s) {
        std::size_t low = kFree;
        for (std::size_t p : s.positions) low = std::min(low, p);
        if (low != kFree && low > s.base) {
            const std::size_t drop = std::min(low - s.base, s.buffer.size());
            s.buffer.erase(s.buffer.begin(), s.buffer.begin() + static_cast<std::ptrdiff_t>(drop));
            s.base += drop;
        }
        s.trim_at = std::max<std::size_t>(64, 2 * s.buffer.size());
    }

    std::shared_ptr<State> state_;
    std::size_t slot_;
};

inline SharedCursor share(Generator source) { return SharedCursor::over(std::move(source)); }

/// The values a self-referential generator has emitted so far, readable by
/// the generator's own sub-streams.
class EmittedPrefix {
public:
    class Reader {
    public:
        Reader(std::shared_ptr<const std::vector<Value>> values, std::size_t pos)
            : values_(std::move(values)), pos_(pos) {}

        std::optional<Value> next() {
            if (pos_ >= values_->size()) {
                throw ProductivityError("read of element " + std::to_string(pos_) +
                                        " before it was emitted");
            }
            return (*values_)[pos_++];
        }

    private:
        std::shared_ptr<const std::vector<Value>> values_;
        std::size_t pos_;
    };

    EmittedPrefix() : values_(std::make_shared<std::vector<Value>>()) {}

    void push(Value v) { values_->push_back(v); }
    [[nodiscard]] std::size_t size() const { return values_->size(); }
    [[nodiscard]] bool empty() const { return values_->empty(); }
    [[nodiscard]] const std::vector<Value>& values() const { return *values_; }
    [[nodiscard]] Reader reader(std::size_t from = 0) const { return Reader(values_, from); }

private:
    std::shared_ptr<std::vector<Value>> values_;
};

// ---------------------------------------------------------------------------
// All pairwise products

namespace detail {

// allProducts (x:xs) z = map (x*) z `unionP` allProducts xs z
// Each row reads `others` through its own cursor; the unexpanded tail keeps a
// cursor at the start so every later row still sees the whole stream.
class AllProductsNode {
public:
    AllProductsNode(Generator factors, SharedCursor others)
        : factors_(std::move(factors)), others_(std::move(others)) {}

    std::optional<Value> next() {
        if (!expanded_) {
            expanded_ = true;
            SharedCursor probe = *others_;
            if (!probe.next()) return finish();
            auto x = factors_.next();
            if (!x) return finish();
            SharedCursor row = *others_;
            inner_ = union_left_biased(scaled(std::move(row), *x),
                                       Generator(AllProductsNode(std::move(factors_),
                                                                 std::move(*others_))));
            others_.reset();
        }
        return inner_.next();
    }

private:
    std::optional<Value> finish() {
        others_.reset();
        factors_ = Generator();
        return std::nullopt;
    }

    Generator factors_;
    std::optional<SharedCursor> others_;
    Generator inner_;
    bool expanded_ = false;
};

}  // namespace detail

/// Sorted set {x * z | x in a, z in b}. Both inputs must be >= 2; an
/// exhausted `a` ends the stream.
inline Generator all_products(Generator a, SharedCursor b) {
    return detail::AllProductsNode(std::move(a), std::move(b));
}

inline Generator all_products(Generator a, Generator b) {
    return all_products(std::move(a), share(std::move(b)));
}

}  // namespace intseq
