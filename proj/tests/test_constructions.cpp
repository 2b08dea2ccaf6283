#include <gtest/gtest.h>

#include "bary/arith.hpp"
#include "bary/barycentric.hpp"
#include "bary/constructions.hpp"
#include "bary/theory.hpp"

#include <cmath>
#include <map>
#include <numeric>

using namespace bary;

TEST(LbWitness, Examples) {
    auto w = lb_witness(11, 4);
    EXPECT_EQ(w.set.to_string(), "0,1,2,3");
    EXPECT_TRUE(w.verified);
    // sigma = 6 and 4g = 6 has the single solution g = 7, not a member
    EXPECT_EQ(mod(4 * 7, 11), 6);
    EXPECT_EQ(lb_witness(7, 3).set.to_string(), "0,1,3");
    EXPECT_EQ(lb_witness(13, 5).set.to_string(), "0,1,2,5,7");
}

TEST(LbWitness, Preconditions) {
    EXPECT_THROW(lb_witness(5, 3), std::invalid_argument);
    EXPECT_THROW(lb_witness(12, 4), std::invalid_argument);
    EXPECT_THROW(lb_witness(11, 9), std::invalid_argument);
    EXPECT_THROW(lb_witness(11, 2), std::invalid_argument);
}

TEST(LbWitness, SizeSumAndFreenessForAllSmallModuli) {
    for (std::int64_t n = 6; n <= 60; ++n) {
        for (int k = 3; k <= n - 3; ++k) {
            if (std::gcd<std::int64_t>(n, k) != 1) continue;
            auto w = lb_witness(n, k);
            ASSERT_EQ(w.set.size(), static_cast<std::size_t>(k));
            std::int64_t sum = 0;
            for (auto a : w.set.indices()) sum += a;
            if (k % 2 == 0) EXPECT_EQ(sum, k * (k - 1) / 2);
            else if (k >= 5) EXPECT_EQ(sum, k * (k + 1) / 2);
            EXPECT_FALSE(has_k_barycentric_subset(w.set, k)) << n << " " << k;
        }
    }
}

TEST(Th8Witness, P11) {
    auto w = th8_witness(11);
    EXPECT_EQ(w.set.to_string(), "0,1,3,4,5,9");
    EXPECT_EQ(w.k, 5);
    EXPECT_TRUE(w.verified);
}

TEST(Th8Witness, OddOrderRejected) {
    EXPECT_THROW(th8_witness(7), std::invalid_argument);
    EXPECT_THROW(th8_witness(23), std::invalid_argument);
    EXPECT_THROW(th8_witness(15), std::invalid_argument);
    EXPECT_THROW(th8_witness(5), std::invalid_argument);
}

TEST(Th8Witness, P13SubsetsByHand) {
    auto w = th8_witness(13);
    ASSERT_EQ(w.set.size(), 7U);
    auto members = w.set.indices();
    // drop each member in turn: the remaining six must not be barycentric
    for (std::size_t skip = 0; skip < members.size(); ++skip) {
        std::vector<std::int64_t> rest;
        for (std::size_t i = 0; i < members.size(); ++i)
            if (i != skip) rest.push_back(members[i]);
        std::int64_t s = std::accumulate(rest.begin(), rest.end(), std::int64_t{0});
        for (auto g : rest) EXPECT_NE(mod(s - 6 * g, 13), 0);
    }
}

TEST(Th8Witness, PartitionPropertiesUpTo61) {
    for (std::int64_t p : primes_between(7, 61)) {
        if (mult_order(2, p) % 2 != 0) continue;
        auto w = th8_witness(p);
        std::vector<std::int64_t> B;
        for (auto a : w.set.indices())
            if (a != 0) B.push_back(a);
        ASSERT_EQ(static_cast<std::int64_t>(B.size()), (p - 1) / 2);
        std::vector<int> hits(static_cast<std::size_t>(p), 0);
        std::int64_t sum = 0;
        for (auto b : B) {
            ++hits[b];
            ++hits[mod(2 * b, p)];
            sum += b;
        }
        EXPECT_EQ(sum % p, 0) << p;
        for (std::int64_t x = 1; x < p; ++x) EXPECT_EQ(hits[x], 1) << p << " " << x;
        EXPECT_EQ(hits[0], 0);
        EXPECT_FALSE(has_k_barycentric_subset(w.set, w.k));
    }
}

TEST(BehrendD, Examples) {
    EXPECT_EQ(behrend_d(1000, 3, 2), 9);
    EXPECT_EQ(behrend_d(18, 3, 1), 3);
}

TEST(BehrendD, MatchesLinearSearchAndLowerEstimate) {
    for (std::int64_t n = 6; n <= 3000; n += 7) {
        for (int k = 3; k <= std::min<std::int64_t>(n - 3, 9); ++k) {
            const std::int64_t N = n / k;
            if (N < 1) continue;
            for (int m = 1; m <= 4; ++m) {
                const auto d = behrend_d(n, k, m);
                // the defining interval, by plain powers
                auto ipow = [](std::int64_t b, int e) {
                    std::int64_t r = 1;
                    while (e-- > 0) r *= b;
                    return r;
                };
                EXPECT_LE(ipow((k - 1) * (d - 1) + 1, m), N);
                EXPECT_LE(N, ipow((k - 1) * d + 1, m) - 1);
                const double estimate = (std::pow(static_cast<double>(n) / k, 1.0 / m) - k) / (k - 1);
                EXPECT_GE(static_cast<double>(d), estimate - 1e-9);
            }
        }
    }
}

TEST(BehrendWitness, Example1000) {
    auto w = behrend_witness(1000, 3, 2);
    EXPECT_EQ(w.set.to_string(), "5,55,71,85");
    ASSERT_TRUE(w.behrend);
    EXPECT_EQ(w.behrend->r, 25);
    EXPECT_EQ(w.behrend->base, 17);
    EXPECT_EQ(w.behrend->d, 9);
    EXPECT_TRUE(w.verified);
    EXPECT_TRUE(w.brute_checked);
    EXPECT_GE(static_cast<double>(w.set.size()), 80.0 / 128.0);
}

TEST(BehrendWitness, LargestShellByEnumeration) {
    // independent count of digit-vector norms for n=1000, k=3, m=2 (base 17, digits 0..8)
    std::map<int, int> count;
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) ++count[a * a + b * b];
    int best = 0;
    for (auto [r, c] : count) best = std::max(best, c);
    EXPECT_EQ(best, 4);
    EXPECT_EQ(behrend_witness(1000, 3, 2).set.size(), 4U);
}

TEST(BehrendWitness, Preconditions) {
    EXPECT_THROW(behrend_witness(5, 3), std::invalid_argument);
    EXPECT_THROW(behrend_witness(10, 8), std::invalid_argument);
    EXPECT_THROW(behrend_witness(100, 3, 0), std::invalid_argument);
}

TEST(BehrendWitness, ShellSizeMeetsTheEstimate) {
    for (std::int64_t n : {200, 1000, 5000, 40000}) {
        for (int k : {3, 4, 5}) {
            for (int m = 2; m <= 4; ++m) {
                if (integer_root(static_cast<std::uint64_t>(n / k), m) < static_cast<std::uint64_t>(k)) continue;
                auto w = behrend_witness(n, k, m);
                const auto& P = *w.behrend;
                const double size = static_cast<double>(w.set.size());
                EXPECT_GT(size, std::pow(static_cast<double>(P.d), m - 2) / m);
                if (P.d >= 2)
                    EXPECT_GE(size, (std::pow(static_cast<double>(P.d), m) - 1) / (m * (P.d - 1.0) * (P.d - 1.0)));
                EXPECT_LE(k * w.set.indices().back(), n);
            }
        }
    }
}

TEST(BehrendWitness, FreeAndAboveBoundUpTo5000) {
    for (int k : {3, 5}) {
        for (std::int64_t n = k + 3; n <= 5000; ++n) {
            auto w = behrend_witness(n, k);
            ASSERT_TRUE(w.brute_checked);
            ASSERT_FALSE(has_k_barycentric_subset(w.set, k)) << n;
            ASSERT_GE(static_cast<double>(w.set.size()), std::ceil(static_cast<double>(behrend_bound(n, k)))) << n;
        }
    }
}

TEST(BehrendWitness, DegenerateWhenOnlyOneDigitValue) {
    auto w = behrend_witness(20, 5);
    EXPECT_TRUE(w.degenerate);
    EXPECT_EQ(w.set.size(), 1U);
}

TEST(WitnessMethod, StringRoundTrip) {
    for (auto m : {WitnessMethod::lb, WitnessMethod::th8, WitnessMethod::behrend, WitnessMethod::corner})
        EXPECT_EQ(witness_method_from_string(to_string(m)), m);
    EXPECT_THROW(witness_method_from_string("alon"), std::invalid_argument);
}
