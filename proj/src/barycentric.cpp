#include "bary/barycentric.hpp"

#include "bary/arith.hpp"

#include <stdexcept>

namespace bary {

namespace {

// Dense bitset over element indices of a group of arbitrary order.
class IndexBits {
public:
    explicit IndexBits(std::int64_t n) : n_(n), words_(static_cast<std::size_t>((n + 63) / 64), 0) {}

    void set(std::int64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::int64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

    IndexBits& operator|=(const IndexBits& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
        return *this;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            for (std::uint64_t m = words_[w]; m; m &= m - 1)
                f(static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(m))));
    }

    IndexBits translated(const FiniteAbelianGroup& G, std::int64_t by) const {
        IndexBits out(n_);
        for_each([&](std::int64_t i) { out.set(G.add_index(i, by)); });
        return out;
    }

private:
    std::int64_t n_;
    std::vector<std::uint64_t> words_;
};

// Whether C(n, r) < 2^64, so that counts of r-subsets are exact in uint64.
bool binomial_fits(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return true;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::int64_t i = 1; i <= r; ++i) {
        acc = acc * static_cast<unsigned __int128>(n - r + i) / static_cast<unsigned __int128>(i);
        if (acc >> 64) return false;
    }
    return true;
}

double binomial_estimate(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0.0;
    double acc = 1.0;
    r = std::min(r, n - r);
    for (std::int64_t i = 1; i <= r; ++i) acc = acc * static_cast<double>(n - r + i) / static_cast<double>(i);
    return acc;
}

// A (k-1)-subset of pool summing to target, if any.
std::optional<std::vector<std::int64_t>> subset_with_sum(const FiniteAbelianGroup& G,
                                                         const std::vector<std::int64_t>& pool, int size,
                                                         std::int64_t target) {
    const std::int64_t n = G.order();
    const std::size_t len = pool.size();
    if (size < 0 || static_cast<std::size_t>(size) > len) return std::nullopt;
    // suffix[i][j]: sums of j-subsets of pool[i..]
    std::vector<std::vector<IndexBits>> suffix(len + 1, std::vector<IndexBits>(size + 1, IndexBits(n)));
    suffix[len][0].set(0);
    for (std::size_t i = len; i-- > 0;) {
        suffix[i] = suffix[i + 1];
        for (int j = 1; j <= size; ++j) suffix[i][j] |= suffix[i + 1][j - 1].translated(G, pool[i]);
    }
    if (!suffix[0][size].test(target)) return std::nullopt;
    std::vector<std::int64_t> chosen;
    std::int64_t remaining = target;
    int need = size;
    for (std::size_t i = 0; i < len && need > 0; ++i) {
        std::int64_t rest = G.add_index(remaining, G.neg_index(pool[i]));
        if (suffix[i + 1][need - 1].test(rest)) {
            chosen.push_back(pool[i]);
            remaining = rest;
            --need;
        }
    }
    return chosen;
}

std::optional<ElementSet> find_by_enumeration(const ElementSet& A, int k) {
    const auto& G = A.group();
    const auto members = A.indices();
    const int len = static_cast<int>(members.size());
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        std::int64_t sum = 0;
        for (int i : pick) sum = G.add_index(sum, members[i]);
        for (int i : pick) {
            if (G.scale_index(k, members[i]) == sum) {
                std::vector<std::int64_t> idx;
                for (int j : pick) idx.push_back(members[j]);
                return ElementSet::from_indices(G, idx);
            }
        }
        int pos = k - 1;
        while (pos >= 0 && pick[pos] == len - k + pos) --pos;
        if (pos < 0) return std::nullopt;
        ++pick[pos];
        for (int i = pos + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
}

} // namespace

bool is_barycentric(const ElementSet& S) {
    if (S.empty()) throw std::invalid_argument("is_barycentric: the set must be nonempty");
    const auto& G = S.group();
    const auto k = static_cast<std::int64_t>(S.size());
    const std::int64_t sum = G.index_of(sigma_set(S));
    for (std::int64_t g : S.indices())
        if (G.scale_index(k, g) == sum) return true;
    return false;
}

std::optional<ElementSet> find_k_barycentric_subset(const ElementSet& A, int k) {
    if (k < 1) throw std::invalid_argument("find_k_barycentric_subset: k must be positive");
    const auto& G = A.group();
    const auto members = A.indices();
    const auto len = static_cast<std::int64_t>(members.size());
    if (len < k) return std::nullopt;
    if (k == 1) return ElementSet::from_indices(G, {members.front()});

    const std::int64_t n = G.order();
    if (binomial_estimate(len, k) * k <= static_cast<double>(len) * k * static_cast<double>(n))
        return find_by_enumeration(A, k);

    // sigma(T) = k t with t in T  <=>  some (k-1)-subset of A \ {t} sums to (k-1) t
    std::optional<std::int64_t> centre;
    if (binomial_fits(len, k - 1)) {
        // ways[j][g] = number of j-subsets of A with sum g (exact mod 2^64)
        std::vector<std::vector<std::uint64_t>> ways(k, std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
        ways[0][0] = 1;
        std::int64_t seen = 0;
        for (std::int64_t a : members) {
            ++seen;
            for (std::int64_t j = std::min<std::int64_t>(seen, k - 1); j >= 1; --j) {
                const auto& prev = ways[j - 1];
                auto& cur = ways[j];
                for (std::int64_t g = 0; g < n; ++g)
                    if (prev[g]) cur[G.add_index(g, a)] += prev[g];
            }
        }
        for (std::int64_t t : members) {
            // inclusion-exclusion removes t from the count
            const std::int64_t target = G.scale_index(k - 1, t);
            const std::int64_t neg_t = G.neg_index(t);
            std::uint64_t count = 0;
            std::int64_t point = target;
            for (int i = 0; i < k; ++i) {
                const std::uint64_t term = ways[k - 1 - i][point];
                count = (i % 2 == 0) ? count + term : count - term;
                point = G.add_index(point, neg_t);
            }
            if (count != 0) {
                centre = t;
                break;
            }
        }
    } else {
        for (std::int64_t t : members) {
            std::vector<IndexBits> reach(k, IndexBits(n));
            reach[0].set(0);
            int used = 0;
            for (std::int64_t a : members) {
                if (a == t) continue;
                ++used;
                for (int j = std::min(used, k - 1); j >= 1; --j) reach[j] |= reach[j - 1].translated(G, a);
            }
            if (reach[k - 1].test(G.scale_index(k - 1, t))) {
                centre = t;
                break;
            }
        }
    }
    if (!centre) return std::nullopt;

    std::vector<std::int64_t> pool;
    for (std::int64_t a : members)
        if (a != *centre) pool.push_back(a);
    auto rest = subset_with_sum(G, pool, k - 1, G.scale_index(k - 1, *centre));
    if (!rest) throw std::logic_error("find_k_barycentric_subset: count and reconstruction disagree");
    rest->push_back(*centre);
    return ElementSet::from_indices(G, *rest);
}

ElementSet sigma_k(const ElementSet& A, int k) {
    if (k < 0 || static_cast<std::size_t>(k) > A.size())
        throw std::invalid_argument("sigma_k: k must lie in [0, |A|]");
    const auto& G = A.group();
    std::vector<IndexBits> reach(k + 1, IndexBits(G.order()));
    reach[0].set(0);
    int used = 0;
    for (std::int64_t a : A.indices()) {
        ++used;
        for (int j = std::min(used, k); j >= 1; --j) reach[j] |= reach[j - 1].translated(G, a);
    }
    ElementSet out(G);
    reach[k].for_each([&](std::int64_t i) { out.insert_index(i); });
    return out;
}

ElementSet s_k_set(const ElementSet& A, std::int64_t k) {
    const auto& G = A.group();
    if (!G.is_cyclic() || !is_prime(G.order()))
        throw std::invalid_argument("s_k_set: the group must be Z/p with p prime");
    if (A.size() < 3) throw std::invalid_argument("s_k_set: A needs at least three elements");
    const std::int64_t p = G.order();
    const auto members = A.indices();
    ElementSet out(G);
    for (std::int64_t a3 : members) {
        const std::int64_t base = mod(k * a3, p);
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (members[i] == a3) continue;
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (members[j] == a3) continue;
                out.insert_index(mod(base + members[i] + members[j], p));
            }
        }
    }
    return out;
}

} // namespace bary
