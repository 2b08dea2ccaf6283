#pragma once

#include "bary/group.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

namespace bary {

struct SearchConfig {
    /// Quotient the search by translations and (for cyclic groups) dilations.
    bool use_affine_reduction = true;
    int worker_count = 1;
    /// Abort with SearchInconclusive after this many search nodes.
    std::optional<std::uint64_t> node_budget;

    void validate() const;
};

enum class Method { exhaustive, closed_form, cached };

std::string_view to_string(Method m) noexcept;
Method method_from_string(std::string_view s);

/// BO(k, G) with a maximum barycentric-free witness of size value - 1.
struct BOResult {
    FiniteAbelianGroup group;
    int k = 0;
    std::int64_t value = 0;
    ElementSet witness;
    Method method = Method::exhaustive;
    std::chrono::nanoseconds elapsed{0};
    std::uint64_t nodes = 0;
};

/// Thrown when the node budget runs out; carries what was proved so far.
class SearchInconclusive : public std::runtime_error {
public:
    SearchInconclusive(std::int64_t lower, std::int64_t upper, ElementSet best);

    /// lower <= BO(k, G) <= upper.
    std::int64_t lower;
    std::int64_t upper;
    /// Largest barycentric-free set found before the budget ran out.
    ElementSet best;
};

/// Largest group order the exhaustive engine accepts.
inline constexpr std::int64_t kMaxSearchOrder = 64;

/**
 * Exact BO(k, G) for |G| <= 64.
 *
 * k = 1, k = 2 and k > |G| are answered directly. Otherwise the engine
 * raises the size m of a sought barycentric-free set until no such m-set
 * exists; BO = m. Every witness is re-verified before it is returned, and
 * the reported witness is the lexicographically smallest maximum free set.
 * The value does not depend on worker_count.
 */
BOResult bo_exhaustive(const FiniteAbelianGroup& G, int k, const SearchConfig& config = {});

/// A maximum-cardinality subset of G without k-barycentric subsets.
ElementSet max_barycentric_free(const FiniteAbelianGroup& G, int k, const SearchConfig& config = {});

/**
 * Some m-subset of G with no k-barycentric subset, or nullopt when none
 * exists. With `lexicographic` set the result is the smallest such set in
 * index order (and the search does no symmetry reduction beyond fixing 0).
 */
std::optional<ElementSet> find_free_set(const FiniteAbelianGroup& G, int k, int m, const SearchConfig& config = {},
                                        bool lexicographic = false);

} // namespace bary
