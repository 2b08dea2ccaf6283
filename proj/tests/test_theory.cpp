#include <gtest/gtest.h>

#include "bary/arith.hpp"
#include "bary/search.hpp"
#include "bary/theory.hpp"

#include <array>
#include <cmath>
#include <map>

using namespace bary;

namespace {

FiniteAbelianGroup G(const char* s) { return FiniteAbelianGroup::parse(s); }

using Monomial = std::array<int, 3>;
using Poly = std::map<Monomial, BigInt>;

Poly multiply(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) out[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
    return out;
}

// (X1 - X2)(X3 - k X1)(X3 - k X2), multiplied out by the test itself
Poly h_poly(std::int64_t k) {
    Poly f{{{1, 0, 0}, 1}, {{0, 1, 0}, -1}};
    Poly g{{{0, 0, 1}, 1}, {{1, 0, 0}, -k}};
    Poly h{{{0, 0, 1}, 1}, {{0, 1, 0}, -k}};
    return multiply(multiply(f, g), h);
}

} // namespace

TEST(BoCorner, Examples) {
    EXPECT_EQ(bo_corner(G("6"), 6), 7);
    EXPECT_EQ(bo_corner(G("2,2"), 3), 5);
    EXPECT_EQ(bo_corner(G("9"), 7), 7);
    EXPECT_EQ(bo_corner(G("4"), 2), 5);
    EXPECT_EQ(bo_corner(G("2,2,2"), 6), 9);
    EXPECT_EQ(bo_corner(G("6"), 4), 5);
    EXPECT_EQ(bo_corner(G("9"), 1), 1);
    EXPECT_FALSE(bo_corner(G("11"), 5).has_value());
    EXPECT_FALSE(bo_corner(G("11"), 0).has_value());
}

TEST(BoCorner, AgreesWithSearchUpToOrder16) {
    for (std::int64_t n = 2; n <= 16; ++n) {
        for (const auto& g : enumerate_groups(n)) {
            for (int k = 1; k <= n + 1; ++k) {
                auto c = bo_corner(g, k);
                if (!c) continue;
                EXPECT_EQ(bo_exhaustive(g, k).value, *c) << g.pretty() << " k=" << k;
            }
        }
    }
}

TEST(W1Bounds, Examples) {
    EXPECT_EQ(w1_bounds(11, 4), (std::pair<std::int64_t, std::int64_t>{4, 8}));
    EXPECT_EQ(w1_bounds(7, 3), (std::pair<std::int64_t, std::int64_t>{3, 6}));
    EXPECT_EQ(w1_bounds(13, 10), (std::pair<std::int64_t, std::int64_t>{10, 12}));
    EXPECT_THROW(w1_bounds(5, 3), std::invalid_argument);
    EXPECT_THROW(w1_bounds(11, 9), std::invalid_argument);
    EXPECT_THROW(w1_bounds(15, 4), std::invalid_argument);
}

TEST(W1Bounds, UpperNeverExceedsP) {
    for (std::int64_t p : primes_between(7, 400))
        for (int k = 3; k <= p - 3; ++k) EXPECT_LE(w1_bounds(p, k).second, p);
}

TEST(DshBound, Examples) {
    EXPECT_EQ(dsh_bound(7, 5, 2), 7);
    EXPECT_EQ(dsh_bound(13, 4, 0), 1);
    EXPECT_EQ(dsh_bound(11, 6, 3), 10);
    EXPECT_THROW(dsh_bound(11, 3, 4), std::invalid_argument);
}

TEST(Proptech, Examples) {
    EXPECT_EQ(proptech_value(7, 4), 5);
    EXPECT_EQ(proptech_value(11, 7), 8);
    EXPECT_FALSE(proptech_value(9, 5).has_value());
    EXPECT_FALSE(proptech_value(11, 5).has_value());
    EXPECT_FALSE(proptech_value(11, 9).has_value());
}

TEST(Th8Value, Examples) {
    EXPECT_EQ(th8_value(7), (std::pair<int, std::int64_t>{3, 4}));
    EXPECT_EQ(th8_value(11), (std::pair<int, std::int64_t>{5, 7}));
    EXPECT_EQ(th8_value(23), (std::pair<int, std::int64_t>{11, 12}));
    EXPECT_THROW(th8_value(9), std::invalid_argument);
}

TEST(UbpolBounds, Examples) {
    EXPECT_THROW(ubpol_bounds(11, 4), std::invalid_argument);
    EXPECT_EQ(ubpol_bounds(11, 5), (std::pair<std::int64_t, std::int64_t>{6, 7}));
    EXPECT_EQ(ubpol_bounds(13, 5), (std::pair<std::int64_t, std::int64_t>{6, 7}));
    EXPECT_THROW(ubpol_bounds(13, 4), std::invalid_argument);
}

TEST(Bounds, ChainOfInequalities) {
    for (std::int64_t p : primes_between(7, 61)) {
        for (int k = 3; k <= p - 3; ++k) {
            auto [wlo, whi] = w1_bounds(p, k);
            if (3 * k < p + 2) continue;
            auto [ulo, uhi] = ubpol_bounds(p, k);
            EXPECT_LE(wlo, ulo);
            EXPECT_LE(uhi, whi);
            if (auto v = proptech_value(p, k)) {
                EXPECT_LE(ulo, *v);
                EXPECT_LE(*v, uhi);
            }
            if (2 * k == p - 1) {
                auto v = th8_value(p).second;
                EXPECT_LE(ulo, v);
                EXPECT_LE(v, uhi);
            }
        }
    }
}

TEST(Chi, Examples) {
    for (std::int64_t k = 2; k <= 11; ++k) EXPECT_EQ(chi_closed_form({k, 0, 2, 1, 2}), BigInt((k - 1) * (k - 1)));
    EXPECT_EQ(chi_closed_form({3, 0, 2, 1, 2}), 4);
    EXPECT_EQ(chi_direct({3, 0, 2, 1, 2}), 4);
    for (int c = 0; c <= 8; ++c)
        for (int c3 = 0; c3 <= 8; ++c3) {
            if (2 * c + c3 < 3) continue;
            EXPECT_EQ(chi_closed_form({5, 0, c, c, c3}), 0);
            EXPECT_EQ(chi_direct({5, 0, c, c, c3}), 0);
        }
    EXPECT_THROW(chi_closed_form({3, 0, 1, 0, 1}), std::invalid_argument);
    EXPECT_THROW(chi_direct({3, 0, -1, 3, 3}), std::invalid_argument);
}

TEST(Chi, BothFormsMatchPolynomialExpansion) {
    for (std::int64_t k = 2; k <= 11; ++k) {
        const Poly H = h_poly(k);
        Poly power{{{0, 0, 0}, 1}};
        const Poly linear{{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}};
        for (int m = 0; m <= 21; ++m) {
            const Poly full = multiply(power, H);
            for (int c1 = 0; c1 <= 8; ++c1)
                for (int c2 = 0; c2 <= 8; ++c2) {
                    const int c3 = m + 3 - c1 - c2;
                    if (c3 < 0 || c3 > 8) continue;
                    auto it = full.find({c1, c2, c3});
                    const BigInt want = it == full.end() ? BigInt(0) : it->second;
                    ChiParams q{k, 0, c1, c2, c3};
                    ASSERT_EQ(chi_direct(q), want) << c1 << "," << c2 << "," << c3 << " k=" << k;
                    ASSERT_EQ(chi_closed_form(q), want) << c1 << "," << c2 << "," << c3 << " k=" << k;
                }
            power = multiply(power, linear);
        }
    }
}

TEST(Chi, AlphaSpecialisation) {
    for (int alpha = 2; alpha <= 9; ++alpha)
        for (std::int64_t k = 2; k <= 11; ++k)
            EXPECT_EQ(chi_alpha(alpha, k), chi_closed_form({k, 0, alpha, alpha - 1, alpha}));
}

TEST(Chi, AlphaSpecialisationNonzeroModP) {
    for (std::int64_t p : primes_between(3, 31))
        for (int alpha = 2; 3 * alpha - 4 < p; ++alpha)
            for (std::int64_t k = 0; k < 3 * p; ++k) {
                if (mod(k, p) == 1) continue;
                EXPECT_NE(chi_mod_p({k, p, alpha, alpha - 1, alpha}), 0) << p << " " << alpha << " " << k;
            }
}

TEST(Chi, ModPView) {
    ChiParams q{3, 3, 2, 1, 2};
    EXPECT_EQ(chi_mod_p(q), 1);
    q.c2 = 2;
    EXPECT_EQ(chi_mod_p(q), 0);
    q.p = 1;
    EXPECT_THROW(chi_mod_p(q), std::invalid_argument);
}

TEST(SkLemmaBound, Examples) {
    EXPECT_EQ(sk_lemma_bound(11, 7, 5), 11);
    EXPECT_EQ(sk_lemma_bound(13, 5, 3), 9);
    EXPECT_EQ(sk_lemma_bound(11, 6, 4), 9);
    // (13+7)/3 is not an integer, so 3a never hits p+7 there
    EXPECT_EQ(sk_lemma_bound(13, 6, 3), 12);
    EXPECT_EQ(sk_lemma_bound(13, 7, 3), 13);
    EXPECT_THROW(sk_lemma_bound(13, 4, 3), std::invalid_argument);
    EXPECT_THROW(sk_lemma_bound(12, 7, 3), std::invalid_argument);
    EXPECT_THROW(sk_lemma_bound(13, 7, 2), std::invalid_argument);
}

TEST(BehrendBound, Examples) {
    // the m = 2 term is 1/2 whenever it is feasible
    EXPECT_GE(behrend_bound(1000, 3), 0.5L);
    EXPECT_EQ(behrend_bound(20, 5), 0.0L);
    EXPECT_EQ(behrend_bound(27, 3), 0.0L);
    EXPECT_EQ(behrend_bound(28, 3), 0.5L);
    EXPECT_THROW(behrend_bound(5, 3), std::invalid_argument);
}

TEST(BehrendBound, MatchesDirectMaximum) {
    for (std::int64_t n : {100, 1000, 12345, 1000000})
        for (int k : {3, 4, 7}) {
            long double best = 0;
            for (int m = 2; m < 40; ++m) {
                const long double root = std::pow(static_cast<long double>(n) / k, 1.0L / m);
                if (root <= k + 1e-12L) continue;
                best = std::max(best, std::pow((root - k) / (k - 1), static_cast<long double>(m - 2)) / m);
            }
            EXPECT_NEAR(static_cast<double>(behrend_bound(n, k)), static_cast<double>(best), 1e-9);
        }
}

TEST(BehrendCorollary, ShapeOfTheReferenceValue) {
    const long double v = behrend_corollary_bound(1000000, 3);
    EXPECT_NEAR(static_cast<double>(v), 1e6 * std::exp(-5 * std::sqrt(std::log(3.0) * std::log(1e6))), 1e-6);
    long double prev = 0;
    // increasing once log n > 25 log(3) / 4
    for (std::int64_t n = 1000; n <= 100'000'000; n *= 3) {
        const long double x = behrend_corollary_bound(n, 3);
        EXPECT_LE(x, n);
        EXPECT_GT(x, prev);
        prev = x;
    }
}

TEST(BoundReport, Z11K5) {
    auto rep = bound_report(G("11"), 5);
    ASSERT_TRUE(rep.exact);
    EXPECT_EQ(rep.exact->value, 7);
    EXPECT_EQ(rep.exact->tag, "th8");
    bool w1_lo = false, w1_hi = false;
    for (const auto& b : rep.lower_bounds) w1_lo |= b.tag == "W1" && b.value == 5;
    for (const auto& b : rep.upper_bounds) w1_hi |= b.tag == "W1" && b.value == 8;
    EXPECT_TRUE(w1_lo && w1_hi);
}

TEST(BoundReport, Z7K4) {
    auto rep = bound_report(G("7"), 4);
    ASSERT_TRUE(rep.exact);
    EXPECT_EQ(rep.exact->value, 5);
    EXPECT_EQ(rep.exact->tag, "proptech");
}

TEST(BoundReport, Z13K5) {
    auto rep = bound_report(G("13"), 5);
    EXPECT_FALSE(rep.exact);
    EXPECT_EQ(rep.best_lower(), 6);
    EXPECT_EQ(rep.best_upper(), 7);
}

TEST(BoundReport, ContainsSearchValueForAllGroupsUpTo24) {
    for (std::int64_t n = 2; n <= 24; ++n)
        for (const auto& g : enumerate_groups(n))
            for (int k = 1; k <= n + 1; ++k) {
                auto rep = bound_report(g, k);
                auto v = bo_exhaustive(g, k).value;
                EXPECT_LE(rep.best_lower(), v) << g.pretty() << " k=" << k;
                EXPECT_GE(rep.best_upper(), v) << g.pretty() << " k=" << k;
                if (rep.exact) EXPECT_EQ(rep.exact->value, v);
            }
}
