#include "bary/theory.hpp"

#include "bary/arith.hpp"
#include "bary/constructions.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bary {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

void require_prime_range(std::int64_t p, int k) {
    require(p >= 7 && is_prime(p), "p must be a prime >= 7, got " + std::to_string(p));
    require(k >= 3 && k <= p - 3, "k must satisfy 3 <= k <= p-3, got k=" + std::to_string(k));
}

std::optional<std::int64_t> cyclic_prime(const FiniteAbelianGroup& G) {
    if (G.is_cyclic() && is_prime(G.order())) return G.order();
    return std::nullopt;
}

} // namespace

std::optional<std::int64_t> bo_corner(const FiniteAbelianGroup& G, int k) {
    if (k < 1) return std::nullopt;
    const std::int64_t n = G.order();
    if (k == 1) return 1;
    if (k == 2 || k > n) return n + 1;
    const int r2 = p_rank(G, 2);
    if (k == n) return r2 == 1 ? n + 1 : n;
    if (k == n - 1) return r2 == 1 ? n - 1 : n + 1;
    if (k == n - 2 && n >= 3) {
        if (n % 2 == 1) return n - 2;
        if (G.exponent() == 2 || n == 4) return n + 1;
        return n - 1;
    }
    return std::nullopt;
}

std::pair<std::int64_t, std::int64_t> w1_bounds(std::int64_t p, int k) {
    require_prime_range(p, k);
    const std::int64_t upper = ceil_div(p - 1, k - 1) + k;
    if (upper > p) throw std::logic_error("W1 upper bound exceeds p");
    return {k, upper};
}

std::int64_t dsh_bound(std::int64_t p, std::int64_t a, std::int64_t k) {
    require(is_prime(p), "p must be prime");
    require(k >= 0 && k <= a, "need 0 <= k <= a");
    return std::min(p, k * (a - k) + 1);
}

std::optional<std::int64_t> proptech_value(std::int64_t n, int k) {
    if (n < 6 || 2 * static_cast<std::int64_t>(k) < n + 1 || k > n - 3) return std::nullopt;
    if (std::gcd<std::int64_t>(n, k) != 1 || std::gcd<std::int64_t>(n, k + 1) != 1) return std::nullopt;
    return k + 1;
}

std::pair<int, std::int64_t> th8_value(std::int64_t p) {
    require(p >= 7 && is_prime(p), "p must be a prime >= 7, got " + std::to_string(p));
    const int k = static_cast<int>((p - 1) / 2);
    return {k, mult_order(2, p) % 2 == 1 ? k + 1 : k + 2};
}

std::pair<std::int64_t, std::int64_t> ubpol_bounds(std::int64_t p, int k) {
    require_prime_range(p, k);
    require(3 * static_cast<std::int64_t>(k) >= p + 2, "k must be at least (p+2)/3");
    return {k + 1, k + 2};
}

void ChiParams::validate() const {
    if (c1 < 0 || c2 < 0 || c3 < 0) throw std::invalid_argument("chi: exponents must be non-negative");
    if (m() < 0) throw std::invalid_argument("chi: c1 + c2 + c3 must be at least 3");
}

namespace {

BigInt factorial(int n) {
    BigInt out = 1;
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

// m! / (a! b! c!) for a + b + c = m, zero if any index is negative.
BigInt trinomial(int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0) return 0;
    return factorial(a + b + c) / (factorial(a) * factorial(b) * factorial(c));
}

} // namespace

BigInt chi_closed_form(const ChiParams& q) {
    q.validate();
    const BigInt k = q.k;
    const BigInt c1 = q.c1, c2 = q.c2, c3 = q.c3;
    const BigInt bracket = k * k * c1 * c2 - k * c3 * (c1 + c2 - 1) + c3 * (c3 - 1);
    const BigInt numerator = factorial(q.m()) * (c1 - c2) * bracket;
    const BigInt denominator = factorial(q.c1) * factorial(q.c2) * factorial(q.c3);
    if (numerator % denominator != 0) throw std::logic_error("chi: closed form is not integral");
    return numerator / denominator;
}

BigInt chi_direct(const ChiParams& q) {
    q.validate();
    const BigInt k = q.k;
    const int a = q.c1, b = q.c2, c = q.c3;
    // H = X1 X3^2 - X2 X3^2 - k X1^2 X3 + k X2^2 X3 + k^2 X1^2 X2 - k^2 X1 X2^2
    return trinomial(a - 1, b, c - 2) - trinomial(a, b - 1, c - 2) - k * trinomial(a - 2, b, c - 1) +
           k * trinomial(a, b - 2, c - 1) + k * k * trinomial(a - 2, b - 1, c) - k * k * trinomial(a - 1, b - 2, c);
}

std::int64_t chi_mod_p(const ChiParams& q) {
    require(q.p >= 2, "chi_mod_p: modulus must be at least 2");
    BigInt r = chi_closed_form(q) % q.p;
    if (r < 0) r += q.p;
    return r.convert_to<std::int64_t>();
}

BigInt chi_alpha(int alpha, std::int64_t k) {
    require(alpha >= 2, "chi_alpha: alpha must be at least 2");
    const BigInt km1 = k - 1;
    return factorial(3 * alpha - 4) / (factorial(alpha) * factorial(alpha - 1) * factorial(alpha - 2)) * km1 * km1;
}

std::int64_t sk_lemma_bound(std::int64_t p, std::int64_t a, int k) {
    require(is_prime(p), "p must be prime");
    require(k >= 3 && k <= p - 1, "k must satisfy 3 <= k <= p-1");
    require(a >= k + 2, "a must be at least k+2");
    if (3 * a <= p + 6) return 3 * a - 6;
    if (3 * a == p + 7) return p - 2;
    return p;
}

long double behrend_bound(std::int64_t n, int k) {
    require(n >= 6 && k >= 3 && k <= n - 3, "behrend_bound needs n >= 6 and 3 <= k <= n-3");
    const long double ratio = static_cast<long double>(n) / k;
    long double best = 0;
    // m = 1 is left out: there the exponent m-2 is negative and the shell estimate fails
    for (unsigned m = 2; m < 64; ++m) {
        // (n/k)^(1/m) > k  <=>  n > k^(m+1)
        if (!pow_at_most(static_cast<std::uint64_t>(k), m + 1, static_cast<std::uint64_t>(n) - 1)) break;
        const long double base = (std::pow(ratio, 1.0L / m) - k) / (k - 1);
        best = std::max(best, std::pow(base, static_cast<long double>(m) - 2) / m);
    }
    return best;
}

long double behrend_corollary_bound(std::int64_t n, int k) {
    require(n >= 2 && k >= 3, "behrend_corollary_bound needs n >= 2 and k >= 3");
    const long double ln = std::log(static_cast<long double>(n));
    return n * std::exp(-5 * std::sqrt(std::log(static_cast<long double>(k)) * ln));
}

std::int64_t BoundReport::best_lower() const {
    std::int64_t out = 0;
    for (const auto& b : lower_bounds) out = std::max(out, b.value);
    return out;
}

std::int64_t BoundReport::best_upper() const {
    std::int64_t out = INT64_MAX;
    for (const auto& b : upper_bounds) out = std::min(out, b.value);
    return out;
}

BoundReport bound_report(const FiniteAbelianGroup& G, int k) {
    require(k >= 1, "k must be positive");
    const std::int64_t n = G.order();
    BoundReport rep{G, k, {}, {}, std::nullopt};
    auto lower = [&](std::int64_t v, std::string tag) { rep.lower_bounds.push_back({v, std::move(tag)}); };
    auto upper = [&](std::int64_t v, std::string tag) { rep.upper_bounds.push_back({v, std::move(tag)}); };
    auto exact = [&](std::int64_t v, std::string tag) {
        if (!rep.exact) rep.exact = Bound{v, tag};
        lower(v, tag);
        upper(v, std::move(tag));
    };

    lower(std::min<std::int64_t>(k, n + 1), "trivial");
    upper(n + 1, "trivial");
    if (auto v = bo_corner(G, k)) exact(*v, "corner");

    if (auto p = cyclic_prime(G)) {
        if (*p >= 7 && k >= 3 && k <= *p - 3) {
            auto [lo, hi] = w1_bounds(*p, k);
            lower(lo, "W1");
            upper(hi, "W1");
            if (3 * static_cast<std::int64_t>(k) >= *p + 2) {
                auto [ulo, uhi] = ubpol_bounds(*p, k);
                lower(ulo, "UBpol");
                upper(uhi, "UBpol");
            }
        }
        // a set of size ceil((p-1)/(k-1)) + k <= p has Sigma_{k-1}(A \ a) = Z/p
        if (k >= 3 && k <= *p - 2) {
            const std::int64_t size = ceil_div(*p - 1, k - 1) + k;
            if (size <= *p) upper(size, "DSH");
        }
        if (*p >= 7 && 2 * static_cast<std::int64_t>(k) == *p - 1) {
            auto [kk, value] = th8_value(*p);
            exact(value, "th8");
            if (mult_order(2, *p) % 2 == 0) lower(static_cast<std::int64_t>(th8_witness(*p).set.size()) + 1, "th8");
        }
    }
    if (G.is_cyclic()) {
        if (auto v = proptech_value(n, k)) exact(*v, "proptech");
        if (n >= 6 && k >= 3 && k <= n - 3) {
            if (std::gcd<std::int64_t>(n, k) == 1) lower(static_cast<std::int64_t>(lb_witness(n, k).set.size()) + 1, "lbk+1");
            lower(static_cast<std::int64_t>(std::ceil(behrend_bound(n, k))), "theoBehrend");
            if (n <= 1'000'000) lower(static_cast<std::int64_t>(behrend_witness(n, k).set.size()) + 1, "behrend-witness");
        }
    }

    const std::int64_t lo = rep.best_lower(), hi = rep.best_upper();
    if (lo > hi)
        throw std::logic_error("inconsistent bounds for " + G.pretty() + ", k=" + std::to_string(k) + ": " +
                               std::to_string(lo) + " > " + std::to_string(hi));
    return rep;
}

} // namespace bary
