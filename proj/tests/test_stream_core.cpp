#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <random>
#include <set>
#include <vector>

#include "intseq/stream_core.hpp"

using namespace intseq;

namespace {

std::vector<Value> random_sorted(std::mt19937_64& rng, std::size_t max_len, Value max_value,
                                 Value min_value = 1) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<Value> val(min_value, max_value);
    std::set<Value> s;
    const std::size_t k = len(rng);
    for (std::size_t i = 0; i < k; ++i) s.insert(val(rng));
    return {s.begin(), s.end()};
}

template <class G>
std::vector<Value> drain(G&& g) {
    std::vector<Value> out;
    while (auto v = g.next()) out.push_back(*v);
    return out;
}

constexpr Value kTop = kMaxValue;

}  // namespace

TEST(Checked, ArithmeticAtTheBoundary) {
    EXPECT_EQ(checked_add(kTop - 1, 1), kTop);
    EXPECT_THROW((void)checked_add(kTop, 1), OverflowError);
    EXPECT_EQ(checked_mul(Value{1} << 32, (Value{1} << 32) - 1), kTop - (Value{1} << 32) + 1);
    EXPECT_THROW((void)checked_mul(Value{1} << 32, Value{1} << 32), OverflowError);
}

TEST(ValueList, RejectsUnsorted) {
    EXPECT_THROW(ValueList({3, 2}), std::invalid_argument);
    EXPECT_THROW(ValueList({2, 2}), std::invalid_argument);
    EXPECT_EQ(drain(ValueList({1, 5, 9})), (std::vector<Value>{1, 5, 9}));
    EXPECT_TRUE(drain(ValueList({})).empty());
}

TEST(ElementarySources, ArithmeticAndGeometric) {
    EXPECT_EQ(take(naturals_from(7), 4), (std::vector<Value>{7, 8, 9, 10}));
    EXPECT_EQ(take(powers_of(3), 5), (std::vector<Value>{3, 9, 27, 81, 243}));
}

TEST(ElementarySources, GeometricReportsOverflow) {
    auto g = Geometric(Value{1} << 62, 2);
    EXPECT_EQ(g.next(), Value{1} << 62);
    EXPECT_EQ(g.next(), Value{1} << 63);
    EXPECT_THROW(g.next(), OverflowError);
}

TEST(ElementarySources, ArithmeticReportsOverflow) {
    auto a = naturals_from(kTop - 1);
    EXPECT_EQ(a.next(), kTop - 1);
    EXPECT_EQ(a.next(), kTop);
    EXPECT_THROW(a.next(), OverflowError);
}

TEST(Take, StopsAtEndOfStream) {
    EXPECT_EQ(take(ValueList({1, 2}), 5).size(), 2u);
}

TEST(Lookahead, FetchesLazily) {
    int pulls = 0;
    struct Counting {
        int* pulls;
        Value v = 0;
        std::optional<Value> next() {
            ++*pulls;
            return ++v;
        }
    };
    Lookahead<Counting> la(Counting{&pulls});
    EXPECT_EQ(pulls, 0);
    EXPECT_EQ(la.peek(), 1u);
    EXPECT_EQ(la.peek(), 1u);
    EXPECT_EQ(pulls, 1);
    EXPECT_EQ(la.pop(), 1u);
    EXPECT_EQ(pulls, 1);
    EXPECT_EQ(la.pop(), 2u);
}

TEST(Union, MatchesSetUnionOnRandomInputs) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 300; ++trial) {
        auto a = random_sorted(rng, 40, 100);
        auto b = random_sorted(rng, 40, 100);
        std::vector<Value> expect;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(expect));
        EXPECT_EQ(drain(union2(ValueList(a), ValueList(b))), expect) << "trial " << trial;
    }
}

TEST(Minus, MatchesSetDifferenceOnRandomInputs) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 300; ++trial) {
        auto a = random_sorted(rng, 40, 100);
        auto b = random_sorted(rng, 40, 100);
        std::vector<Value> expect;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(expect));
        EXPECT_EQ(drain(minus(ValueList(a), ValueList(b))), expect) << "trial " << trial;
    }
}

TEST(Scaled, MultipliesEachValue) {
    EXPECT_EQ(drain(scaled(ValueList({1, 3, 7}), 5)), (std::vector<Value>{5, 15, 35}));
}

TEST(Scaled, OverflowIsReportedNotWrapped) {
    auto s = scaled(ValueList({1, kTop / 2 + 1}), 2);
    EXPECT_EQ(s.next(), 2u);
    EXPECT_THROW(s.next(), OverflowError);
}

TEST(Union, OverflowFromEitherInputPropagates) {
    auto u = union2(ValueList({1, 2}), Geometric(kTop / 2 + 1, 2));
    EXPECT_EQ(u.next(), 1u);
    EXPECT_EQ(u.next(), 2u);
    EXPECT_EQ(u.next(), kTop / 2 + 1);
    EXPECT_THROW(u.next(), OverflowError);
}

TEST(LeftBiasedUnion, TakesFirstHeadWithoutTouchingSecond) {
    struct Poison {
        std::optional<Value> next() { throw std::logic_error("forced"); }
    };
    auto u = union_left_biased(ValueList({1, 4}), Poison{});
    EXPECT_EQ(u.next(), 1u);
    EXPECT_THROW(u.next(), std::logic_error);
}

TEST(LeftBiasedUnion, CollapsesEqualHeads) {
    EXPECT_EQ(drain(union_left_biased(ValueList({2, 4}), ValueList({2, 3, 4}))),
              (std::vector<Value>{2, 3, 4}));
}

TEST(LeftBiasedUnion, AgreesWithUnionWhenContractHolds) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_sorted(rng, 30, 200, 50);
        auto b = random_sorted(rng, 30, 200, 50);
        a.insert(a.begin(), 10);
        std::vector<Value> expect;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(expect));
        EXPECT_EQ(drain(union_left_biased(ValueList(a), ValueList(b))), expect);
    }
}

TEST(UnionMany, FoldsEveryInput) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        std::set<Value> all;
        std::vector<Generator> gens;
        for (int k = 0; k < 5; ++k) {
            auto v = random_sorted(rng, 20, 80);
            all.insert(v.begin(), v.end());
            gens.emplace_back(ValueList(v));
        }
        EXPECT_EQ(drain(union_many(std::move(gens))), std::vector<Value>(all.begin(), all.end()));
    }
}

TEST(Monotonicity, CombinedStreamStaysStrictlyIncreasing) {
    auto g = union2(minus(naturals_from(1), scaled(naturals_from(1), 3)),
                    union2(powers_of(2), scaled(naturals_from(1), 7)));
    Value prev = 0;
    for (int i = 0; i < 10000; ++i) {
        Value v = *g.next();
        ASSERT_GT(v, prev);
        prev = v;
    }
}

TEST(SharedCursor, CopiesReadIndependently) {
    SharedCursor a = share(naturals_from(1));
    EXPECT_EQ(a.next(), 1u);
    SharedCursor b = a;
    EXPECT_EQ(a.next(), 2u);
    EXPECT_EQ(a.next(), 3u);
    EXPECT_EQ(b.next(), 2u);
    EXPECT_EQ(b.next(), 3u);
    EXPECT_EQ(b.next(), 4u);
    EXPECT_EQ(a.next(), 4u);
}

TEST(SharedCursor, PullsSourceOnceAndTrims) {
    int pulls = 0;
    struct Counting {
        int* pulls;
        Value v = 0;
        std::optional<Value> next() {
            ++*pulls;
            return ++v;
        }
    };
    SharedCursor a = share(Counting{&pulls});
    SharedCursor b = a;
    for (int i = 0; i < 1000; ++i) {
        a.next();
        b.next();
    }
    EXPECT_EQ(pulls, 1000);
    EXPECT_LE(a.buffered(), 64u);
    {
        SharedCursor lagging = a;
        for (int i = 0; i < 100; ++i) a.next();
        EXPECT_GE(a.buffered(), 100u);
        EXPECT_EQ(lagging.next(), 1001u);
    }
}

TEST(EmittedPrefix, ReaderSeesOnlyEmittedValues) {
    EmittedPrefix p;
    auto r = p.reader();
    p.push(1);
    p.push(3);
    EXPECT_EQ(r.next(), 1u);
    EXPECT_EQ(r.next(), 3u);
    EXPECT_THROW(r.next(), ProductivityError);
}

TEST(AllProducts, MatchesBruteForce) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_sorted(rng, 12, 60, 2);
        auto b = random_sorted(rng, 12, 60, 2);
        std::set<Value> expect;
        for (Value x : a)
            for (Value z : b) expect.insert(x * z);
        EXPECT_EQ(drain(all_products(Generator(ValueList(a)), Generator(ValueList(b)))),
                  std::vector<Value>(expect.begin(), expect.end()))
            << "trial " << trial;
    }
}

TEST(AllProducts, InfiniteInputs) {
    auto g = all_products(Generator(powers_of(2)), Generator(naturals_from(3)));
    std::set<Value> expect;
    for (Value x = 2; x <= 1024; x *= 2)
        for (Value z = 3; z <= 1000; ++z) expect.insert(x * z);
    auto got = take(g, 200);
    EXPECT_EQ(got, std::vector<Value>(expect.begin(), std::next(expect.begin(), 200)));
}
