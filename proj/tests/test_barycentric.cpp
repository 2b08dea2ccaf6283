#include <gtest/gtest.h>

#include "bary/barycentric.hpp"

#include <random>
#include <set>

using namespace bary;

namespace {

ElementSet Z(std::int64_t n, std::vector<std::int64_t> r) { return ElementSet::of_residues(n, r); }

// Every k-subset checked against the definition on residues.
bool brute_has_barycentric(std::int64_t n, const std::vector<std::int64_t>& a, int k) {
    const int len = static_cast<int>(a.size());
    if (len < k) return false;
    for (std::uint32_t m = 0; m < (1U << len); ++m) {
        if (__builtin_popcount(m) != k) continue;
        std::int64_t s = 0;
        for (int i = 0; i < len; ++i)
            if ((m >> i) & 1U) s += a[i];
        for (int i = 0; i < len; ++i)
            if (((m >> i) & 1U) && ((s - k * a[i]) % n + n) % n == 0) return true;
    }
    return false;
}

std::set<std::int64_t> brute_sigma_k(std::int64_t n, const std::vector<std::int64_t>& a, int k) {
    std::set<std::int64_t> out;
    const int len = static_cast<int>(a.size());
    for (std::uint32_t m = 0; m < (1U << len); ++m) {
        if (__builtin_popcount(m) != k) continue;
        std::int64_t s = 0;
        for (int i = 0; i < len; ++i)
            if ((m >> i) & 1U) s += a[i];
        out.insert(s % n);
    }
    return out;
}

std::vector<std::int64_t> random_subset(std::mt19937& rng, std::int64_t n, std::size_t size) {
    std::vector<std::int64_t> all(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    return all;
}

} // namespace

TEST(IsBarycentric, Examples) {
    EXPECT_TRUE(is_barycentric(Z(7, {0, 1, 2})));
    EXPECT_FALSE(is_barycentric(Z(7, {0, 1, 3})));
    for (int g = 0; g < 7; ++g) EXPECT_TRUE(is_barycentric(Z(7, {g})));
    EXPECT_THROW(is_barycentric(ElementSet(FiniteAbelianGroup::cyclic(7))), std::invalid_argument);
}

TEST(IsBarycentric, PairsNeverAre) {
    for (std::int64_t n = 2; n <= 16; ++n)
        for (const auto& G : enumerate_groups(n))
            for (std::int64_t a = 0; a < n; ++a)
                for (std::int64_t b = a + 1; b < n; ++b)
                    EXPECT_FALSE(is_barycentric(ElementSet::from_indices(G, {a, b}))) << G.pretty();
}

TEST(HasBarycentricSubset, Examples) {
    EXPECT_TRUE(has_k_barycentric_subset(Z(7, {0, 1, 2, 3, 4}), 3));
    EXPECT_FALSE(has_k_barycentric_subset(Z(7, {0, 1, 3}), 3));
    EXPECT_FALSE(has_k_barycentric_subset(Z(7, {0, 1}), 3));
}

TEST(HasBarycentricSubset, WitnessIsBarycentricSubset) {
    auto A = Z(31, {0, 2, 3, 7, 11, 12, 19, 25, 30});
    for (int k = 1; k <= 9; ++k) {
        auto w = find_k_barycentric_subset(A, k);
        EXPECT_EQ(w.has_value(), brute_has_barycentric(31, A.indices(), k)) << k;
        if (!w) continue;
        EXPECT_EQ(w->size(), static_cast<std::size_t>(k));
        EXPECT_TRUE(is_barycentric(*w));
        for (auto i : w->indices()) EXPECT_TRUE(A.contains_index(i));
    }
}

TEST(HasBarycentricSubset, MatchesBruteForceOnRandomSets) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 400; ++trial) {
        std::int64_t n = std::uniform_int_distribution<std::int64_t>(5, 90)(rng);
        std::size_t size = std::uniform_int_distribution<std::size_t>(1, std::min<std::int64_t>(n, 16))(rng);
        int k = std::uniform_int_distribution<int>(1, static_cast<int>(size))(rng);
        auto a = random_subset(rng, n, size);
        EXPECT_EQ(has_k_barycentric_subset(Z(n, a), k), brute_has_barycentric(n, a, k)) << "n=" << n << " k=" << k;
    }
}

TEST(HasBarycentricSubset, NonCyclicAgainstDefinition) {
    // Z/2 x Z/2 x Z/2: sigma(S) = k g with k even means sigma(S) = 0 when k is even
    auto G = FiniteAbelianGroup::parse("2,2,2");
    auto full = ElementSet::full(G);
    EXPECT_TRUE(has_k_barycentric_subset(full, 4));
    EXPECT_FALSE(has_k_barycentric_subset(full, 3));
    EXPECT_FALSE(has_k_barycentric_subset(full, 9));
}

TEST(SigmaK, Examples) {
    EXPECT_EQ(sigma_k(Z(7, {1, 2, 3}), 2).to_string(), "3,4,5");
    EXPECT_EQ(sigma_k(Z(7, {1, 2, 3}), 0).to_string(), "0");
    EXPECT_THROW(sigma_k(Z(7, {1, 2, 3}), 4), std::invalid_argument);
    EXPECT_THROW(sigma_k(Z(7, {1, 2, 3}), -1), std::invalid_argument);
}

TEST(SigmaK, MatchesBruteForce) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::int64_t n = std::uniform_int_distribution<std::int64_t>(2, 40)(rng);
        std::size_t size = std::uniform_int_distribution<std::size_t>(1, std::min<std::int64_t>(n, 12))(rng);
        int k = std::uniform_int_distribution<int>(0, static_cast<int>(size))(rng);
        auto a = random_subset(rng, n, size);
        auto got = sigma_k(Z(n, a), k).indices();
        auto want = brute_sigma_k(n, a, k);
        EXPECT_EQ(std::set<std::int64_t>(got.begin(), got.end()), want);
    }
}

TEST(SigmaK, OneMoreThanKMissesExactlyTheShiftedSet) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::int64_t n = std::uniform_int_distribution<std::int64_t>(4, 50)(rng);
        int k = std::uniform_int_distribution<int>(1, static_cast<int>(std::min<std::int64_t>(n - 1, 12)))(rng);
        auto A = Z(n, random_subset(rng, n, static_cast<std::size_t>(k) + 1));
        const std::int64_t s = A.group().index_of(sigma_set(A));
        std::set<std::int64_t> want;
        for (auto a : A.indices()) want.insert(((s - a) % n + n) % n);
        auto got = sigma_k(A, k).indices();
        EXPECT_EQ(std::set<std::int64_t>(got.begin(), got.end()), want);
    }
}

TEST(SkSet, ThreeElementsInZ11) {
    // ordered triples of distinct elements of {0,1,2}
    std::set<std::int64_t> want;
    const std::int64_t a[] = {0, 1, 2};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l)
                if (i != j && j != l && i != l) want.insert((a[i] + a[j] + 3 * a[l]) % 11);
    auto got = s_k_set(Z(11, {0, 1, 2}), 3).indices();
    EXPECT_EQ(std::set<std::int64_t>(got.begin(), got.end()), want);
}

TEST(SkSet, Preconditions) {
    EXPECT_THROW(s_k_set(Z(12, {0, 1, 2}), 3), std::invalid_argument);
    EXPECT_THROW(s_k_set(ElementSet::full(FiniteAbelianGroup::parse("2,2")), 3), std::invalid_argument);
    EXPECT_THROW(s_k_set(Z(11, {0, 1}), 3), std::invalid_argument);
}

TEST(SkSet, FullWhenLargeInZ11) {
    // |A| >= (11+8)/3 means |A| >= 7
    for (std::uint32_t m = 0; m < (1U << 11); ++m) {
        if (__builtin_popcount(m) < 7) continue;
        std::vector<std::int64_t> a;
        for (int i = 0; i < 11; ++i)
            if ((m >> i) & 1U) a.push_back(i);
        const int size = static_cast<int>(a.size());
        for (int k = 3; k <= size - 2; ++k) EXPECT_EQ(s_k_set(Z(11, a), k).size(), 11U);
    }
}
