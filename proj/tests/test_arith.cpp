#include <gtest/gtest.h>

#include "bary/arith.hpp"

#include <numeric>

using namespace bary;

TEST(Arith, ModIsNonNegative) {
    EXPECT_EQ(mod(-1, 7), 6);
    EXPECT_EQ(mod(-14, 7), 0);
    EXPECT_EQ(mod(12, 11), 1);
}

TEST(Arith, CeilDiv) {
    EXPECT_EQ(ceil_div(10, 3), 4);
    EXPECT_EQ(ceil_div(9, 3), 3);
    EXPECT_EQ(ceil_div(0, 5), 0);
}

TEST(Arith, PrimesAgainstSieve) {
    std::vector<bool> composite(200, false);
    for (int i = 2; i < 200; ++i)
        for (int j = 2 * i; j < 200; j += i) composite[j] = true;
    for (int n = 0; n < 200; ++n) EXPECT_EQ(is_prime(n), n >= 2 && !composite[n]) << n;
    EXPECT_EQ(primes_between(7, 31), (std::vector<std::int64_t>{7, 11, 13, 17, 19, 23, 29, 31}));
}

TEST(Arith, MultOrderExamples) {
    EXPECT_EQ(mult_order(2, 7), 3);
    EXPECT_EQ(mult_order(2, 11), 10);
    EXPECT_EQ(mult_order(2, 23), 11);
    EXPECT_EQ(mult_order(2, 13), 12);
    for (int n = 2; n < 40; ++n) EXPECT_EQ(mult_order(1, n), 1);
}

TEST(Arith, MultOrderRejectsNonUnits) {
    EXPECT_THROW(mult_order(2, 8), std::invalid_argument);
    EXPECT_THROW(mult_order(3, 1), std::invalid_argument);
}

TEST(Arith, MultOrderDividesPhiAndIsMinimal) {
    for (std::int64_t n = 2; n <= 120; ++n) {
        for (std::int64_t s = 1; s < n; ++s) {
            if (std::gcd(s, n) != 1) continue;
            const auto t = mult_order(s, n);
            EXPECT_EQ(euler_phi(n) % t, 0) << s << " mod " << n;
            std::int64_t x = 1;
            for (std::int64_t i = 1; i < t; ++i) {
                x = x * s % n;
                EXPECT_NE(x, 1);
            }
            EXPECT_EQ(x * s % n, 1 % n);
        }
    }
}

TEST(Arith, IntegerRootIsExactAtBoundaries) {
    for (std::uint64_t r = 1; r < 300; ++r) {
        EXPECT_EQ(integer_root(r * r, 2), r);
        EXPECT_EQ(integer_root(r * r - 1, 2), r - 1);
        EXPECT_EQ(integer_root(r * r * r, 3), r);
        EXPECT_EQ(integer_root(r * r * r - 1, 3), r - 1);
    }
    EXPECT_EQ(integer_root(333, 2), 18U);
    EXPECT_EQ(integer_root(UINT64_MAX, 1), UINT64_MAX);
    EXPECT_EQ(integer_root(UINT64_MAX, 2), 4294967295U);
}

TEST(Arith, PowAtMost) {
    std::uint64_t out = 0;
    EXPECT_TRUE(pow_at_most(3, 4, 81, &out));
    EXPECT_EQ(out, 81U);
    EXPECT_FALSE(pow_at_most(3, 4, 80));
    EXPECT_FALSE(pow_at_most(10, 30, UINT64_MAX));
}

TEST(Arith, DivisorsAndFactorize) {
    EXPECT_EQ(divisors(36), (std::vector<std::int64_t>{1, 2, 3, 4, 6, 9, 12, 18, 36}));
    auto f = factorize(360);
    ASSERT_EQ(f.size(), 3U);
    EXPECT_EQ(f[0], (std::pair<std::int64_t, int>{2, 3}));
    EXPECT_EQ(f[2], (std::pair<std::int64_t, int>{5, 1}));
}

TEST(Arith, ModInverse) {
    for (std::int64_t a = 1; a < 13; ++a) EXPECT_EQ(a * mod_inverse(a, 13) % 13, 1);
    EXPECT_THROW(mod_inverse(4, 12), std::invalid_argument);
}
