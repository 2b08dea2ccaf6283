#include "bary/arith.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace bary {

bool is_prime(std::int64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t n) {
    if (exp < 0) return mod_pow(mod_inverse(base, n), -exp, n);
    __int128 result = 1 % n;
    __int128 b = mod(base, n);
    while (exp > 0) {
        if (exp & 1) result = result * b % n;
        b = b * b % n;
        exp >>= 1;
    }
    return static_cast<std::int64_t>(result);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
    std::int64_t old_r = mod(a, n), r = n;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1)
        throw std::invalid_argument("mod_inverse: " + std::to_string(a) + " is not invertible modulo " +
                                    std::to_string(n));
    return mod(old_s, n);
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t phi = n;
    for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::int64_t mult_order(std::int64_t s, std::int64_t n) {
    if (n < 2) throw std::invalid_argument("mult_order: modulus must be at least 2");
    if (std::gcd(mod(s, n), n) != 1)
        throw std::invalid_argument("mult_order: " + std::to_string(s) + " is not coprime to " +
                                    std::to_string(n));
    // the order divides phi(n); test divisors in increasing order
    for (std::int64_t t : divisors(euler_phi(n)))
        if (mod_pow(s, t, n) == 1 % n) return t;
    throw std::logic_error("mult_order: no order found");
}

bool pow_at_most(std::uint64_t base, unsigned exp, std::uint64_t limit, std::uint64_t* out) {
    std::uint64_t acc = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && acc > limit / base) return false;
        acc *= base;
    }
    if (acc > limit) return false;
    if (out) *out = acc;
    return true;
}

std::uint64_t integer_root(std::uint64_t value, unsigned root) {
    if (root == 0) throw std::invalid_argument("integer_root: root must be positive");
    if (root == 1 || value < 2) return value;
    std::uint64_t lo = 1, hi = 1;
    while (pow_at_most(hi, root, value)) hi *= 2;
    // invariant: lo^root <= value < hi^root
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (pow_at_most(mid, root, value))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::vector<std::int64_t> primes_between(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = std::max<std::int64_t>(lo, 2); p <= hi; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

} // namespace bary
