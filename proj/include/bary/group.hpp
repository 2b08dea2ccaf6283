#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bary {

/// Raised when elements or sets from incompatible groups are combined.
class StructuralError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An element of a finite abelian group, as coordinates reduced modulo the
/// invariant factors of its group.
struct GroupElement {
    std::vector<std::int64_t> coords;

    GroupElement() = default;
    explicit GroupElement(std::vector<std::int64_t> c) : coords(std::move(c)) {}
    GroupElement(std::initializer_list<std::int64_t> c) : coords(c) {}

    std::size_t rank() const noexcept { return coords.size(); }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/**
 * Finite abelian group Z/n_1 x ... x Z/n_r in invariant-factor form
 * (1 < n_1 | n_2 | ... | n_r).
 *
 * Elements are also addressed by a dense index in [0, order): the
 * mixed-radix number whose most significant digit is the first coordinate.
 * Index order coincides with lexicographic order on coordinates and the
 * identity has index 0.
 */
class FiniteAbelianGroup {
public:
    /// Strict constructor: the factors must already form a divisor chain.
    explicit FiniteAbelianGroup(std::vector<std::int64_t> invariant_factors);

    static FiniteAbelianGroup cyclic(std::int64_t n);

    /// Accepts any list of moduli >= 2 (e.g. {2, 3}) and returns the
    /// isomorphic group in invariant-factor form (Z/6).
    static FiniteAbelianGroup from_moduli(const std::vector<std::int64_t>& moduli);

    /// Parses "11" or "2,4"; non-chain lists are canonicalized.
    static FiniteAbelianGroup parse(std::string_view text);

    const std::vector<std::int64_t>& invariant_factors() const noexcept { return factors_; }
    std::size_t rank() const noexcept { return factors_.size(); }
    std::int64_t order() const noexcept { return order_; }
    std::int64_t exponent() const noexcept { return factors_.back(); }
    bool is_cyclic() const noexcept { return factors_.size() == 1; }

    /// Canonical key, e.g. "2,4".
    std::string to_string() const;
    /// Human form, e.g. "Z/2 x Z/4".
    std::string pretty() const;

    bool contains(const GroupElement& g) const noexcept;
    GroupElement identity() const;
    /// Reduces arbitrary integer coordinates into the group.
    GroupElement reduce(std::vector<std::int64_t> coords) const;

    std::int64_t index_of(const GroupElement& g) const;
    GroupElement element_at(std::int64_t index) const;

    std::int64_t add_index(std::int64_t a, std::int64_t b) const;
    std::int64_t neg_index(std::int64_t a) const;
    std::int64_t scale_index(std::int64_t t, std::int64_t a) const;

    std::string format(const GroupElement& g) const;
    GroupElement parse_element(std::string_view text) const;

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.factors_ == b.factors_;
    }

private:
    std::vector<std::int64_t> factors_;
    std::int64_t order_ = 1;
};

/**
 * A subset of a finite abelian group.
 *
 * Members are held as element indices; groups of order at most 64 use a
 * single-word bitmask, larger groups a sorted index vector.
 */
class ElementSet {
public:
    static constexpr std::int64_t kDenseLimit = 64;

    explicit ElementSet(FiniteAbelianGroup group);
    ElementSet(FiniteAbelianGroup group, const std::vector<GroupElement>& members);

    static ElementSet from_indices(FiniteAbelianGroup group, const std::vector<std::int64_t>& indices);
    /// Convenience for cyclic groups: residues are reduced modulo n.
    static ElementSet of_residues(std::int64_t n, const std::vector<std::int64_t>& residues);
    static ElementSet full(FiniteAbelianGroup group);

    const FiniteAbelianGroup& group() const noexcept { return group_; }
    std::size_t size() const noexcept;
    bool empty() const noexcept { return size() == 0; }

    bool contains(const GroupElement& g) const;
    bool contains_index(std::int64_t index) const;
    void insert(const GroupElement& g);
    void insert_index(std::int64_t index);
    void erase_index(std::int64_t index);

    /// Sorted member indices.
    std::vector<std::int64_t> indices() const;
    /// Members in index (= lexicographic) order.
    std::vector<GroupElement> elements() const;

    /// Bitmask view; only valid when group().order() <= kDenseLimit.
    std::uint64_t mask() const;

    /// Serialized as a comma-separated sorted element list: "0,1,3" or "0:1,1:3".
    std::string to_string() const;
    static ElementSet parse(const FiniteAbelianGroup& group, std::string_view text);

    friend bool operator==(const ElementSet& a, const ElementSet& b);

private:
    bool dense() const noexcept { return group_.order() <= kDenseLimit; }
    void check_index(std::int64_t index) const;

    FiniteAbelianGroup group_;
    std::uint64_t mask_ = 0;
    std::vector<std::int64_t> sorted_;
};

GroupElement add(const GroupElement& g, const GroupElement& h, const FiniteAbelianGroup& G);
GroupElement negate(const GroupElement& g, const FiniteAbelianGroup& G);
GroupElement scalar_mul(std::int64_t t, const GroupElement& g, const FiniteAbelianGroup& G);

/// Sum of the members of S (identity for the empty set).
GroupElement sigma_set(const ElementSet& S);

/// Sum of all elements of G from its structure: the unique element of order 2
/// when the 2-rank is 1, the identity otherwise.
GroupElement sigma_group_formula(const FiniteAbelianGroup& G);

/// Number of invariant factors divisible by the prime p.
int p_rank(const FiniteAbelianGroup& G, std::int64_t p);

/// The subgroup 2.G = {2g : g in G}.
ElementSet double_image(const FiniteAbelianGroup& G);

/// t.A = {ta : a in A}.
ElementSet multiples(std::int64_t t, const ElementSet& A);

/// One group per isomorphism class of the given order, in a fixed order
/// (cyclic first, then by increasing rank).
std::vector<FiniteAbelianGroup> enumerate_groups(std::int64_t order);

} // namespace bary
