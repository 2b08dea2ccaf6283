#pragma once

// Small integer number theory used throughout: everything here works on
// machine integers and is meant for desk-scale moduli (well below 2^31).

#include <cstdint>
#include <vector>

namespace bary {

/// Least non-negative residue of x modulo n (n > 0).
constexpr std::int64_t mod(std::int64_t x, std::int64_t n) noexcept {
    std::int64_t r = x % n;
    return r < 0 ? r + n : r;
}

bool is_prime(std::int64_t n) noexcept;

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t n);

/// Inverse of a modulo n; throws std::invalid_argument if gcd(a, n) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

/// Positive divisors of n in increasing order.
std::vector<std::int64_t> divisors(std::int64_t n);

/// Prime factorization as (prime, exponent) pairs, primes increasing.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/**
 * Multiplicative order of s modulo n: the least t >= 1 with s^t = 1 (mod n).
 *
 * Throws std::invalid_argument when n < 2 or gcd(s, n) != 1.
 */
std::int64_t mult_order(std::int64_t s, std::int64_t n);

/// floor(value^(1/root)) computed exactly on integers (value >= 0, root >= 1).
std::uint64_t integer_root(std::uint64_t value, unsigned root);

/// base^exp, or nullopt-like saturation: returns false when it exceeds limit.
bool pow_at_most(std::uint64_t base, unsigned exp, std::uint64_t limit, std::uint64_t* out = nullptr);

/// Primes p with lo <= p <= hi, increasing.
std::vector<std::int64_t> primes_between(std::int64_t lo, std::int64_t hi);

/// ceil(a / b) for b > 0.
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) noexcept {
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

} // namespace bary
