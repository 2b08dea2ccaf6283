#pragma once

// Explicit barycentric-free sets in Z/nZ. Every builder verifies its output
// before returning it; a failed verification is a bug and throws logic_error.

#include "bary/group.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace bary {

enum class WitnessMethod { lb, th8, behrend, corner };

std::string_view to_string(WitnessMethod m) noexcept;
WitnessMethod witness_method_from_string(std::string_view s);

/// Digit-shell data: members are sums a_i * base^i with digits a_i < d and
/// sum of a_i^2 equal to r.
struct BehrendParams {
    std::int64_t n = 0;
    int k = 0;
    int m = 0;
    std::int64_t d = 0;
    std::int64_t base = 0; // (k-1)(d-1)+1
    std::int64_t r = 0;
};

struct WitnessRecord {
    std::int64_t n = 0;
    int k = 0;
    WitnessMethod method = WitnessMethod::lb;
    ElementSet set;
    bool verified = false;
    /// True when the set was also checked by direct search for k-barycentric subsets.
    bool brute_checked = false;
    /// Only d = 1 was available, so the shell is a single point.
    bool degenerate = false;
    std::optional<BehrendParams> behrend;
};

/// A non-barycentric k-subset of Z/n; needs n >= 6, 3 <= k <= n-3, gcd(k, n) = 1.
WitnessRecord lb_witness(std::int64_t n, int k);

/**
 * {0} together with B = union of 4^j h_i (0 <= j < ord_p(2)/2) over coset
 * representatives h_i of <2> in (Z/p)^*. Free of k-barycentric subsets for
 * k = (p-1)/2. Needs p >= 7 prime with ord_p(2) even.
 */
WitnessRecord th8_witness(std::int64_t p);

/// The d >= 1 with ((k-1)(d-1)+1)^m <= floor(n/k) <= ((k-1)d+1)^m - 1.
std::int64_t behrend_d(std::int64_t n, int k, int m);

/**
 * Largest squared-norm shell of the digit set, read in Z/n. With m unset,
 * every digit count m >= 1 with floor(n/k)^(1/m) >= k is tried (plus m = 1)
 * and the largest shell wins; ties go to smaller r, then smaller m.
 */
WitnessRecord behrend_witness(std::int64_t n, int k, std::optional<int> m = std::nullopt);

} // namespace bary
