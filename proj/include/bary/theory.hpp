#pragma once

// Closed-form values and bounds for BO(k, G). Threshold conditions are all
// evaluated in exact integer arithmetic.

#include "bary/group.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bary {

using BigInt = boost::multiprecision::cpp_int;

/// Exact BO when k is 1, 2, above |G|, or within two of |G|.
std::optional<std::int64_t> bo_corner(const FiniteAbelianGroup& G, int k);

/// (k, ceil((p-1)/(k-1)) + k) for p >= 7 prime and 3 <= k <= p-3.
std::pair<std::int64_t, std::int64_t> w1_bounds(std::int64_t p, int k);

/// min{p, k(a-k)+1}: lower bound on |Sigma_k(A)| for |A| = a in Z/p.
std::int64_t dsh_bound(std::int64_t p, std::int64_t a, std::int64_t k);

/// k+1 when n >= 6, (n+1)/2 <= k <= n-3 and n is coprime to k and k+1.
std::optional<std::int64_t> proptech_value(std::int64_t n, int k);

/// (k, BO(k, Z/p)) for k = (p-1)/2: k+1 if ord_p(2) is odd, else k+2.
std::pair<int, std::int64_t> th8_value(std::int64_t p);

/// (k+1, k+2) for p >= 7 prime and (p+2)/3 <= k <= p-3.
std::pair<std::int64_t, std::int64_t> ubpol_bounds(std::int64_t p, int k);

/// Exponents of the monomial X1^c1 X2^c2 X3^c3 in (X1+X2+X3)^m H(X1,X2,X3),
/// H = (X1-X2)(X3-kX1)(X3-kX2), m = c1+c2+c3-3.
struct ChiParams {
    std::int64_t k = 0;
    std::int64_t p = 0; // modulus for chi_mod_p only
    int c1 = 0;
    int c2 = 0;
    int c3 = 0;

    int m() const noexcept { return c1 + c2 + c3 - 3; }
    void validate() const;
};

/// The coefficient via its factorial closed form.
BigInt chi_closed_form(const ChiParams& params);
/// The coefficient as a signed sum of six trinomial coefficients.
BigInt chi_direct(const ChiParams& params);
/// chi_closed_form reduced into [0, p).
std::int64_t chi_mod_p(const ChiParams& params);
/// (3a-4)! / (a! (a-1)! (a-2)!) * (k-1)^2, the coefficient at (a, a-1, a).
BigInt chi_alpha(int alpha, std::int64_t k);

/// Lower bound for |S_k(A)| with |A| = a in Z/p: 3a-6, p-2 or p by the size of a.
std::int64_t sk_lemma_bound(std::int64_t p, std::int64_t a, int k);

/// Digit-shell lower bound on BO(k, Z/n), maximised over m >= 2; 0 if no m is feasible.
long double behrend_bound(std::int64_t n, int k);
/// n * exp(-5 sqrt(log k log n)), an asymptotic reference value.
long double behrend_corollary_bound(std::int64_t n, int k);

struct Bound {
    std::int64_t value = 0;
    std::string tag;
};

struct BoundReport {
    FiniteAbelianGroup group;
    int k = 0;
    std::vector<Bound> lower_bounds;
    std::vector<Bound> upper_bounds;
    std::optional<Bound> exact;

    std::int64_t best_lower() const;
    std::int64_t best_upper() const;
};

/**
 * Every bound whose hypotheses hold for (G, k), including lower bounds from
 * verified constructions. Throws std::logic_error if the collected bounds
 * are inconsistent.
 */
BoundReport bound_report(const FiniteAbelianGroup& G, int k);

} // namespace bary
