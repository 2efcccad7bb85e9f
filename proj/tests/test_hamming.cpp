#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "intseq/hamming.hpp"

using namespace intseq;

namespace {

// Every product of factors that stays <= bound, by plain set expansion.
std::vector<Value> closure_upto(const std::vector<Value>& factors, Value bound) {
    std::set<Value> seen = {1};
    std::vector<Value> frontier = {1};
    while (!frontier.empty()) {
        std::vector<Value> next;
        for (Value v : frontier) {
            for (Value f : factors) {
                if (v > bound / f) continue;
                if (seen.insert(v * f).second) next.push_back(v * f);
            }
        }
        frontier.swap(next);
    }
    return {seen.begin(), seen.end()};
}

std::vector<Generator> all_generators(const FactorBase& base) {
    std::vector<Generator> gens;
    gens.emplace_back(hamming_filter(base));
    gens.emplace_back(hamming_generative_min_heads(base));
    gens.emplace_back(hamming_union_fold(base));
    gens.emplace_back(hamming_recursive_products(base));
    if (base.size() == 2) gens.emplace_back(hamming_generative_pair(base.factors()[0], base.factors()[1]));
    return gens;
}

const std::vector<std::vector<Value>> kBases = {
    {2}, {2, 3}, {2, 3, 5}, {3, 5, 7}, {4, 6}, {3, 4, 14}, {6, 10, 15}, {2, 4}, {5, 7, 11, 13}};

}  // namespace

TEST(FactorBase, NormalizesAndValidates) {
    FactorBase b({5, 2, 3, 2});
    EXPECT_EQ(std::vector<Value>(b.factors().begin(), b.factors().end()),
              (std::vector<Value>{2, 3, 5}));
    EXPECT_THROW(FactorBase(std::vector<Value>{}), std::invalid_argument);
    EXPECT_THROW(FactorBase({1, 2}), std::invalid_argument);
    EXPECT_THROW(FactorBase({0}), std::invalid_argument);
}

TEST(IsCompositeOf, Examples) {
    FactorBase b235{2, 3, 5};
    EXPECT_TRUE(is_composite_of(b235, 1));
    EXPECT_TRUE(is_composite_of(b235, 60));
    EXPECT_FALSE(is_composite_of(b235, 14));
    EXPECT_THROW((void)is_composite_of(b235, 0), std::invalid_argument);
}

TEST(IsCompositeOf, NonCoprimeBaseNeedsBacktracking) {
    FactorBase b{4, 6};
    EXPECT_TRUE(is_composite_of(b, 36));
    EXPECT_TRUE(is_composite_of(b, 96));
    EXPECT_FALSE(is_composite_of(b, 12));
    EXPECT_FALSE(is_composite_of(b, 2));
}

TEST(IsCompositeOf, AgreesWithSetExpansion) {
    for (const auto& f : kBases) {
        const Value bound = 20000;
        const auto members = closure_upto(f, bound);
        const std::set<Value> member_set(members.begin(), members.end());
        FactorBase base(f);
        for (Value n = 1; n <= bound; ++n) {
            ASSERT_EQ(is_composite_of(base, n), member_set.contains(n)) << "n=" << n;
        }
    }
}

TEST(Hamming, ClassicPrefix) {
    const std::vector<Value> expect = {1, 2, 3, 4, 5, 6, 8, 9, 10, 12};
    FactorBase base{2, 3, 5};
    for (auto& g : all_generators(base)) EXPECT_EQ(take(g, 10), expect);
    EXPECT_EQ(take(hamming_generative_pair(2, 3), 10),
              (std::vector<Value>{1, 2, 3, 4, 6, 8, 9, 12, 16, 18}));
}

TEST(Hamming, NonCoprimeBasePrefix) {
    const std::vector<Value> expect = {1, 4, 6, 16, 24, 36, 64, 96, 144, 216};
    for (auto& g : all_generators(FactorBase{4, 6})) EXPECT_EQ(take(g, 10), expect);
}

// Soundness and completeness against set expansion, to a depth the
// filter can reach quickly for each base.
TEST(Hamming, EveryGeneratorMatchesSetExpansion) {
    for (const auto& f : kBases) {
        FactorBase base(f);
        const auto expect = closure_upto(f, 200000);
        const std::size_t depth = std::min<std::size_t>(expect.size(), 300);
        const std::vector<Value> prefix(expect.begin(), expect.begin() + static_cast<std::ptrdiff_t>(depth));
        int k = 0;
        for (auto& g : all_generators(base)) {
            EXPECT_EQ(take(g, depth), prefix) << "base size " << f.size() << " generator " << k;
            ++k;
        }
    }
}

TEST(Hamming, GenerativeVariantsAgreeDeep) {
    for (const auto& f : kBases) {
        FactorBase base(f);
        const auto expect = closure_upto(f, Value{1} << 40);
        const std::size_t depth = std::min<std::size_t>(expect.size(), 3000);
        const std::vector<Value> prefix(expect.begin(), expect.begin() + static_cast<std::ptrdiff_t>(depth));
        EXPECT_EQ(take(hamming_generative_min_heads(base), depth), prefix);
        EXPECT_EQ(take(hamming_union_fold(base), depth), prefix);
        EXPECT_EQ(take(hamming_recursive_products(base), depth), prefix);
    }
}

TEST(Hamming, FactorOrderDoesNotMatter) {
    FactorBase a({2, 3, 5});
    FactorBase b({5, 3, 2});
    EXPECT_EQ(a, b);
    EXPECT_EQ(take(hamming_recursive_products(a), 200), take(hamming_recursive_products(b), 200));
    EXPECT_EQ(take(hamming_union_fold(a), 200), take(hamming_union_fold(b), 200));
}

TEST(Hamming, StrictlyIncreasing) {
    auto g = hamming_recursive_products(FactorBase{2, 3, 5, 7});
    Value prev = 0;
    for (int i = 0; i < 10000; ++i) {
        Value v = *g.next();
        ASSERT_GT(v, prev);
        prev = v;
    }
}

TEST(Hamming, OverflowIsReported) {
    FactorBase two{2};
    auto check = [](Generator g) {
        for (int i = 0; i < 64; ++i) ASSERT_EQ(g.next(), Value{1} << i);
        EXPECT_THROW(g.next(), OverflowError);
    };
    check(hamming_generative_min_heads(two));
    check(hamming_union_fold(two));
    check(hamming_recursive_products(two));
    auto pair = hamming_generative_pair(2, 4);
    for (int i = 0; i < 64; ++i) ASSERT_EQ(pair.next(), Value{1} << i);
    EXPECT_THROW(pair.next(), OverflowError);
}

TEST(HammingPair, RejectsBadArguments) {
    EXPECT_THROW(hamming_generative_pair(3, 3), std::invalid_argument);
    EXPECT_THROW(hamming_generative_pair(5, 3), std::invalid_argument);
    EXPECT_THROW(hamming_generative_pair(1, 3), std::invalid_argument);
}
