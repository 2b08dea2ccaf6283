#include "bary/group.hpp"

#include "bary/arith.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <functional>
#include <map>

namespace bary {

namespace {

std::vector<std::int64_t> parse_int_list(std::string_view text, char sep) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = text.find(sep, pos);
        std::string_view token = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
            throw std::invalid_argument("cannot parse integer '" + std::string(token) + "'");
        out.push_back(value);
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

// Integer partitions of e, each non-increasing.
void partitions(int e, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (e == 0) {
        out.push_back(cur);
        return;
    }
    for (int part = std::min(e, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions(e - part, part, cur, out);
        cur.pop_back();
    }
}

} // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> invariant_factors)
    : factors_(std::move(invariant_factors)) {
    if (factors_.empty()) throw std::invalid_argument("group needs at least one invariant factor");
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2) throw std::invalid_argument("invariant factors must be at least 2");
        if (i + 1 < factors_.size() && factors_[i + 1] % factors_[i] != 0)
            throw std::invalid_argument("invariant factors must form a divisor chain, got " +
                                        std::to_string(factors_[i]) + " before " + std::to_string(factors_[i + 1]));
        if (order_ > (std::int64_t{1} << 40) / factors_[i]) throw std::invalid_argument("group order too large");
        order_ *= factors_[i];
    }
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(std::int64_t n) { return FiniteAbelianGroup({n}); }

FiniteAbelianGroup FiniteAbelianGroup::from_moduli(const std::vector<std::int64_t>& moduli) {
    if (moduli.empty()) throw std::invalid_argument("group needs at least one modulus");
    // collect prime-power parts per prime, then rebuild the divisor chain
    std::map<std::int64_t, std::vector<std::int64_t>> parts;
    for (std::int64_t n : moduli) {
        if (n < 2) throw std::invalid_argument("moduli must be at least 2");
        for (auto [p, e] : factorize(n)) {
            std::int64_t q = 1;
            for (int i = 0; i < e; ++i) q *= p;
            parts[p].push_back(q);
        }
    }
    std::size_t rank = 0;
    for (auto& [p, qs] : parts) {
        std::sort(qs.begin(), qs.end(), std::greater<>());
        rank = std::max(rank, qs.size());
    }
    std::vector<std::int64_t> factors(rank, 1);
    for (auto& [p, qs] : parts)
        for (std::size_t i = 0; i < qs.size(); ++i) factors[rank - 1 - i] *= qs[i];
    return FiniteAbelianGroup(std::move(factors));
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view text) {
    return from_moduli(parse_int_list(text, ','));
}

std::string FiniteAbelianGroup::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(factors_[i]);
    }
    return s;
}

std::string FiniteAbelianGroup::pretty() const {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += " x ";
        s += "Z/" + std::to_string(factors_[i]);
    }
    return s;
}

bool FiniteAbelianGroup::contains(const GroupElement& g) const noexcept {
    if (g.rank() != rank()) return false;
    for (std::size_t i = 0; i < rank(); ++i)
        if (g.coords[i] < 0 || g.coords[i] >= factors_[i]) return false;
    return true;
}

GroupElement FiniteAbelianGroup::identity() const { return GroupElement(std::vector<std::int64_t>(rank(), 0)); }

GroupElement FiniteAbelianGroup::reduce(std::vector<std::int64_t> coords) const {
    if (coords.size() != rank())
        throw StructuralError("element of rank " + std::to_string(coords.size()) + " in group of rank " +
                              std::to_string(rank()));
    for (std::size_t i = 0; i < rank(); ++i) coords[i] = mod(coords[i], factors_[i]);
    return GroupElement(std::move(coords));
}

std::int64_t FiniteAbelianGroup::index_of(const GroupElement& g) const {
    if (!contains(g)) throw StructuralError("element is not a reduced member of " + pretty());
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) idx = idx * factors_[i] + g.coords[i];
    return idx;
}

GroupElement FiniteAbelianGroup::element_at(std::int64_t index) const {
    if (index < 0 || index >= order_) throw std::out_of_range("element index out of range");
    std::vector<std::int64_t> coords(rank());
    for (std::size_t i = rank(); i-- > 0;) {
        coords[i] = index % factors_[i];
        index /= factors_[i];
    }
    return GroupElement(std::move(coords));
}

std::int64_t FiniteAbelianGroup::add_index(std::int64_t a, std::int64_t b) const {
    if (is_cyclic()) {
        std::int64_t s = a + b;
        return s >= order_ ? s - order_ : s;
    }
    std::int64_t idx = 0, stride = 1;
    for (std::size_t i = rank(); i-- > 0;) {
        std::int64_t n = factors_[i];
        std::int64_t c = a % n + b % n;
        if (c >= n) c -= n;
        idx += c * stride;
        stride *= n;
        a /= n;
        b /= n;
    }
    return idx;
}

std::int64_t FiniteAbelianGroup::neg_index(std::int64_t a) const { return scale_index(-1, a); }

std::int64_t FiniteAbelianGroup::scale_index(std::int64_t t, std::int64_t a) const {
    if (is_cyclic()) return static_cast<std::int64_t>(mod(static_cast<std::int64_t>((__int128)t * a % order_), order_));
    std::int64_t idx = 0, stride = 1;
    for (std::size_t i = rank(); i-- > 0;) {
        std::int64_t n = factors_[i];
        std::int64_t c = mod(static_cast<std::int64_t>((__int128)t * (a % n) % n), n);
        idx += c * stride;
        stride *= n;
        a /= n;
    }
    return idx;
}

std::string FiniteAbelianGroup::format(const GroupElement& g) const {
    std::string s;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        if (i) s += ':';
        s += std::to_string(g.coords[i]);
    }
    return s;
}

GroupElement FiniteAbelianGroup::parse_element(std::string_view text) const {
    auto coords = parse_int_list(text, ':');
    GroupElement g(coords);
    if (!contains(g)) throw StructuralError("'" + std::string(text) + "' is not a reduced element of " + pretty());
    return g;
}

// ---------------------------------------------------------------------------

ElementSet::ElementSet(FiniteAbelianGroup group) : group_(std::move(group)) {}

ElementSet::ElementSet(FiniteAbelianGroup group, const std::vector<GroupElement>& members)
    : group_(std::move(group)) {
    for (const auto& g : members) insert(g);
}

ElementSet ElementSet::from_indices(FiniteAbelianGroup group, const std::vector<std::int64_t>& indices) {
    ElementSet s(std::move(group));
    for (std::int64_t i : indices) s.insert_index(i);
    return s;
}

ElementSet ElementSet::of_residues(std::int64_t n, const std::vector<std::int64_t>& residues) {
    ElementSet s(FiniteAbelianGroup::cyclic(n));
    for (std::int64_t r : residues) s.insert_index(mod(r, n));
    return s;
}

ElementSet ElementSet::full(FiniteAbelianGroup group) {
    ElementSet s(std::move(group));
    if (s.dense()) {
        std::int64_t n = s.group_.order();
        s.mask_ = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    } else {
        s.sorted_.resize(static_cast<std::size_t>(s.group_.order()));
        for (std::size_t i = 0; i < s.sorted_.size(); ++i) s.sorted_[i] = static_cast<std::int64_t>(i);
    }
    return s;
}

std::size_t ElementSet::size() const noexcept {
    return dense() ? static_cast<std::size_t>(std::popcount(mask_)) : sorted_.size();
}

void ElementSet::check_index(std::int64_t index) const {
    if (index < 0 || index >= group_.order()) throw StructuralError("element index outside the group");
}

bool ElementSet::contains(const GroupElement& g) const { return contains_index(group_.index_of(g)); }

bool ElementSet::contains_index(std::int64_t index) const {
    if (index < 0 || index >= group_.order()) return false;
    if (dense()) return (mask_ >> index) & 1U;
    return std::binary_search(sorted_.begin(), sorted_.end(), index);
}

void ElementSet::insert(const GroupElement& g) { insert_index(group_.index_of(g)); }

void ElementSet::insert_index(std::int64_t index) {
    check_index(index);
    if (dense()) {
        mask_ |= std::uint64_t{1} << index;
        return;
    }
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), index);
    if (it == sorted_.end() || *it != index) sorted_.insert(it, index);
}

void ElementSet::erase_index(std::int64_t index) {
    check_index(index);
    if (dense()) {
        mask_ &= ~(std::uint64_t{1} << index);
        return;
    }
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), index);
    if (it != sorted_.end() && *it == index) sorted_.erase(it);
}

std::vector<std::int64_t> ElementSet::indices() const {
    if (!dense()) return sorted_;
    std::vector<std::int64_t> out;
    out.reserve(size());
    for (std::uint64_t m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

std::vector<GroupElement> ElementSet::elements() const {
    std::vector<GroupElement> out;
    for (std::int64_t i : indices()) out.push_back(group_.element_at(i));
    return out;
}

std::uint64_t ElementSet::mask() const {
    if (!dense()) throw std::logic_error("bitmask view requires a group of order at most 64");
    return mask_;
}

std::string ElementSet::to_string() const {
    std::string s;
    bool first = true;
    for (const auto& g : elements()) {
        if (!first) s += ',';
        first = false;
        s += group_.format(g);
    }
    return s;
}

ElementSet ElementSet::parse(const FiniteAbelianGroup& group, std::string_view text) {
    ElementSet s(group);
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    if (text.empty()) return s;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = text.find(',', pos);
        auto token = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        GroupElement g = group.parse_element(token);
        if (s.contains(g)) throw std::invalid_argument("duplicate element '" + std::string(token) + "'");
        s.insert(g);
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return s;
}

bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.group_ == b.group_ && a.mask_ == b.mask_ && a.sorted_ == b.sorted_;
}

// ---------------------------------------------------------------------------

GroupElement add(const GroupElement& g, const GroupElement& h, const FiniteAbelianGroup& G) {
    if (g.rank() != G.rank() || h.rank() != G.rank()) throw StructuralError("add: rank mismatch");
    std::vector<std::int64_t> c(G.rank());
    for (std::size_t i = 0; i < G.rank(); ++i) c[i] = g.coords[i] + h.coords[i];
    return G.reduce(std::move(c));
}

GroupElement negate(const GroupElement& g, const FiniteAbelianGroup& G) { return scalar_mul(-1, g, G); }

GroupElement scalar_mul(std::int64_t t, const GroupElement& g, const FiniteAbelianGroup& G) {
    if (g.rank() != G.rank()) throw StructuralError("scalar_mul: rank mismatch");
    std::vector<std::int64_t> c(G.rank());
    for (std::size_t i = 0; i < G.rank(); ++i) {
        std::int64_t n = G.invariant_factors()[i];
        c[i] = static_cast<std::int64_t>((__int128)mod(t, n) * mod(g.coords[i], n) % n);
    }
    return GroupElement(std::move(c));
}

GroupElement sigma_set(const ElementSet& S) {
    const auto& G = S.group();
    std::int64_t acc = 0;
    for (std::int64_t i : S.indices()) acc = G.add_index(acc, i);
    return G.element_at(acc);
}

GroupElement sigma_group_formula(const FiniteAbelianGroup& G) {
    if (p_rank(G, 2) != 1) return G.identity();
    // the only even factor is the last one; its half is the element of order 2
    std::vector<std::int64_t> c(G.rank(), 0);
    c.back() = G.exponent() / 2;
    return GroupElement(std::move(c));
}

int p_rank(const FiniteAbelianGroup& G, std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("p_rank: " + std::to_string(p) + " is not prime");
    int r = 0;
    for (std::int64_t n : G.invariant_factors())
        if (n % p == 0) ++r;
    return r;
}

ElementSet double_image(const FiniteAbelianGroup& G) {
    return multiples(2, ElementSet::full(G));
}

ElementSet multiples(std::int64_t t, const ElementSet& A) {
    const auto& G = A.group();
    ElementSet out(G);
    for (std::int64_t i : A.indices()) out.insert_index(G.scale_index(t, i));
    return out;
}

std::vector<FiniteAbelianGroup> enumerate_groups(std::int64_t order) {
    if (order < 2) throw std::invalid_argument("enumerate_groups: order must be at least 2");
    auto primes = factorize(order);
    std::vector<std::vector<std::vector<int>>> per_prime;
    for (auto [p, e] : primes) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        partitions(e, e, cur, parts);
        per_prime.push_back(std::move(parts));
    }
    std::vector<std::vector<std::int64_t>> all;
    std::vector<std::size_t> choice(primes.size(), 0);
    while (true) {
        std::vector<std::int64_t> moduli;
        for (std::size_t i = 0; i < primes.size(); ++i)
            for (int part : per_prime[i][choice[i]]) {
                std::int64_t q = 1;
                for (int j = 0; j < part; ++j) q *= primes[i].first;
                moduli.push_back(q);
            }
        all.push_back(FiniteAbelianGroup::from_moduli(moduli).invariant_factors());
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] == per_prime[i].size()) choice[i++] = 0;
        if (i == choice.size()) break;
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<FiniteAbelianGroup> out;
    for (auto& f : all) out.emplace_back(std::move(f));
    return out;
}

} // namespace bary
