#pragma once

#include "bary/group.hpp"

#include <optional>

namespace bary {

/// A set S with k = |S| members is barycentric when sigma(S) = k*g for some
/// member g. Singletons always are; two-element sets never are.
bool is_barycentric(const ElementSet& S);

/**
 * Looks for a k-element barycentric subset of A and returns one if present.
 *
 * Runs a subset-sum count over the group (or plain enumeration when A is
 * small enough that it is cheaper), so the cost is roughly |A| * k * |G|.
 */
std::optional<ElementSet> find_k_barycentric_subset(const ElementSet& A, int k);

inline bool has_k_barycentric_subset(const ElementSet& A, int k) {
    return find_k_barycentric_subset(A, k).has_value();
}

/// Sigma_k(A): all sums of k-element subsets of A. Requires 0 <= k <= |A|.
ElementSet sigma_k(const ElementSet& A, int k);

/// S_k(A) = {a1 + a2 + k*a3 : a1, a2, a3 in A pairwise distinct}, for A in Z/p.
ElementSet s_k_set(const ElementSet& A, std::int64_t k);

} // namespace bary
