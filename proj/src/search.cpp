#include "bary/search.hpp"

#include "bary/arith.hpp"
#include "bary/barycentric.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <climits>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

namespace bary {

void SearchConfig::validate() const {
    if (worker_count < 1) throw std::invalid_argument("worker_count must be at least 1");
    if (node_budget && *node_budget < 1) throw std::invalid_argument("node_budget must be at least 1");
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
    case Method::exhaustive: return "exhaustive";
    case Method::closed_form: return "closed_form";
    case Method::cached: return "cached";
    }
    return "unknown";
}

Method method_from_string(std::string_view s) {
    if (s == "exhaustive") return Method::exhaustive;
    if (s == "closed_form") return Method::closed_form;
    if (s == "cached") return Method::cached;
    throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

SearchInconclusive::SearchInconclusive(std::int64_t lo, std::int64_t hi, ElementSet b)
    : std::runtime_error("node budget exhausted: " + std::to_string(lo) + " <= BO <= " + std::to_string(hi)),
      lower(lo), upper(hi), best(std::move(b)) {}

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(int i) { return Mask{1} << i; }
inline int lowest(Mask m) { return std::countr_zero(m); }
inline int count(Mask m) { return std::popcount(m); }

// Group of order <= 64 with elements as bit positions.
class MaskGroup {
public:
    explicit MaskGroup(const FiniteAbelianGroup& G)
        : n_(static_cast<int>(G.order())), cyclic_(G.is_cyclic()),
          full_(n_ == 64 ? ~Mask{0} : bit(n_) - 1), add_(static_cast<std::size_t>(n_ * n_)),
          neg_(static_cast<std::size_t>(n_)) {
        for (int a = 0; a < n_; ++a) {
            neg_[a] = static_cast<std::uint8_t>(G.neg_index(a));
            for (int b = 0; b < n_; ++b) add_[a * n_ + b] = static_cast<std::uint8_t>(G.add_index(a, b));
        }
    }

    int n() const { return n_; }
    Mask full() const { return full_; }
    int add(int a, int b) const { return add_[a * n_ + b]; }
    int neg(int a) const { return neg_[a]; }
    int sub(int a, int b) const { return add(a, neg(b)); }

    Mask translate(Mask m, int g) const {
        if (g == 0 || m == 0) return m;
        if (cyclic_) return ((m << g) | (m >> (n_ - g))) & full_;
        Mask out = 0;
        for (; m; m &= m - 1) out |= bit(add(lowest(m), g));
        return out;
    }

    Mask negate(Mask m) const {
        Mask out = 0;
        for (; m; m &= m - 1) out |= bit(neg_[lowest(m)]);
        return out;
    }

private:
    int n_;
    bool cyclic_;
    Mask full_;
    std::vector<std::uint8_t> add_;
    std::vector<std::uint8_t> neg_;
};

/*
 * A set A is rejected when it contains a "conflict": a pair (R, b) with
 * R a subset of A of size r, b in A \ R and sigma(R) + w*b = x0.
 *
 * Two encodings of "A has a k-barycentric subset" fit this shape:
 *   direct      r = k-1, w = -(k-1), x0 = 0       (R = T \ {t}, b = t)
 *   complement  r = m-k, w = k,      x0 = sigma(A) (R = A \ T, b = t)
 * The complement form needs sigma(A) fixed in advance, which translation
 * normalisation provides. The engine uses whichever has the smaller r.
 */
struct Problem {
    const MaskGroup* group = nullptr;
    int m = 0;
    int r = 0;
    int x0 = 0;
    std::vector<int> wb; // w * b for every element b
    int target = -1;     // required sigma(A), or -1
};

Problem make_problem(const MaskGroup& MG, const FiniteAbelianGroup& G, int k, int m, int target, bool complement) {
    Problem p;
    p.group = &MG;
    p.m = m;
    p.target = target;
    std::int64_t w = 0;
    if (complement) {
        p.r = m - k;
        p.x0 = target;
        w = k;
    } else {
        p.r = k - 1;
        p.x0 = 0;
        w = -(k - 1);
    }
    p.wb.resize(static_cast<std::size_t>(MG.n()));
    for (int b = 0; b < MG.n(); ++b) p.wb[b] = static_cast<int>(G.scale_index(w, b));
    return p;
}

struct Node {
    Mask set = 0;
    int size = 0;
    int sum = 0;
    Mask cand = 0;
};

struct Budget {
    std::atomic<std::uint64_t> nodes{0};
    std::optional<std::uint64_t> limit;
    std::atomic<bool> exhausted{false};

    bool charge() {
        std::uint64_t used = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (limit && used > *limit) {
            exhausted.store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }
};

struct BudgetExhausted {};

enum class Outcome { pruned, solved, branch };

class Searcher {
public:
    Searcher(const Problem& p, Budget& budget, std::function<bool()> stop, bool lexicographic)
        : p_(p), g_(*p.group), budget_(budget), stop_(std::move(stop)), lex_(lexicographic) {}

    std::optional<Mask> run(const Node& node) {
        if (dfs(node)) return found_;
        return std::nullopt;
    }

    // Applies pruning/elimination; on `branch`, node.cand is reduced and
    // `pick` is the element to branch on.
    Outcome analyse(Node& node, int& pick) {
        const int need = p_.m - node.size;
        if (need == 0) return (p_.target < 0 || node.sum == p_.target) ? Outcome::solved : Outcome::pruned;
        if (count(node.cand) < need) return Outcome::pruned;

        const int r = p_.r;
        std::array<Mask, 65> reach{};
        subset_sums(node.set, -1, r, reach);

        // unary eliminations: candidates completing a conflict with the current set
        Mask elim = 0;
        for (Mask c = node.cand; c; c &= c - 1) {
            int e = lowest(c);
            if ((reach[r] >> g_.sub(p_.x0, p_.wb[e])) & 1U) elim |= bit(e);
        }
        Mask pair_sums = 0; // c1 + c2 values that would complete a conflict
        if (r >= 1) {
            std::array<Mask, 65> partial{};
            for (Mask s = node.set; s; s &= s - 1) {
                int e = lowest(s);
                subset_sums(node.set, e, r - 1, partial);
                int base = g_.sub(p_.x0, p_.wb[e]);
                elim |= g_.translate(g_.negate(partial[r - 1]), base);
                if (r >= 2) pair_sums |= g_.translate(g_.negate(partial[r - 2]), base);
            }
        }
        node.cand &= ~elim;
        const int available = count(node.cand);
        if (available < need) return Outcome::pruned;

        if (p_.target >= 0 && !sum_reachable(node.cand, need, g_.sub(p_.target, node.sum))) return Outcome::pruned;

        // binary conflicts among candidates give a clique-cover bound
        std::array<Mask, 64> adj{};
        bool any_edge = false;
        if (r >= 1) {
            Mask neg_reach = g_.negate(reach[r - 1]);
            for (Mask c = node.cand; c; c &= c - 1) {
                int e = lowest(c);
                Mask hit = g_.translate(neg_reach, g_.sub(p_.x0, p_.wb[e])) & node.cand & ~bit(e);
                if (!hit) continue;
                any_edge = true;
                adj[e] |= hit;
                for (Mask h = hit; h; h &= h - 1) adj[lowest(h)] |= bit(e);
            }
            if (r >= 2 && pair_sums) {
                for (Mask c = node.cand; c; c &= c - 1) {
                    int e = lowest(c);
                    Mask hit = g_.translate(pair_sums, g_.neg(e)) & node.cand & ~bit(e);
                    if (!hit) continue;
                    any_edge = true;
                    adj[e] |= hit;
                }
            }
        }
        if (any_edge && clique_cover_below(node.cand, adj, need)) return Outcome::pruned;

        if (lex_ || !any_edge) {
            pick = lowest(node.cand);
        } else {
            int best = -1;
            for (Mask c = node.cand; c; c &= c - 1) {
                int e = lowest(c);
                int d = count(adj[e] & node.cand);
                if (d > best) {
                    best = d;
                    pick = e;
                }
            }
        }
        return Outcome::branch;
    }

    Node include(const Node& node, int e) const {
        return Node{node.set | bit(e), node.size + 1, g_.add(node.sum, e), node.cand & ~bit(e)};
    }

    static Node exclude(const Node& node, int e) { return Node{node.set, node.size, node.sum, node.cand & ~bit(e)}; }

    bool charge() {
        if (!budget_.charge()) throw BudgetExhausted{};
        return true;
    }

private:
    bool dfs(Node node) {
        if (stop_ && stop_()) return false;
        charge();
        int pick = -1;
        switch (analyse(node, pick)) {
        case Outcome::pruned: return false;
        case Outcome::solved: found_ = node.set; return true;
        case Outcome::branch: break;
        }
        if (dfs(include(node, pick))) return true;
        return dfs(exclude(node, pick));
    }

    // Sums of j-subsets of `set` (skipping `skip`), for j = 0..depth.
    void subset_sums(Mask set, int skip, int depth, std::array<Mask, 65>& reach) const {
        if (depth < 0) return;
        std::fill(reach.begin(), reach.begin() + depth + 1, Mask{0});
        reach[0] = bit(0);
        int used = 0;
        for (Mask s = set; s; s &= s - 1) {
            int e = lowest(s);
            if (e == skip) continue;
            ++used;
            for (int j = std::min(used, depth); j >= 1; --j) reach[j] |= g_.translate(reach[j - 1], e);
        }
    }

    bool sum_reachable(Mask cand, int need, int value) const {
        if (need == 1) return (cand >> value) & 1U;
        std::array<Mask, 65> reach{};
        reach[0] = bit(0);
        int used = 0;
        for (Mask c = cand; c; c &= c - 1) {
            int e = lowest(c);
            ++used;
            for (int j = std::min(used, need); j >= 1; --j) reach[j] |= g_.translate(reach[j - 1], e);
        }
        return (reach[need] >> value) & 1U;
    }

    // True when the candidates split into fewer than `need` cliques of
    // mutually conflicting elements (each clique contributes at most one).
    static bool clique_cover_below(Mask cand, const std::array<Mask, 64>& adj, int need) {
        Mask rem = cand;
        int cliques = 0;
        while (rem) {
            int v = -1, best = INT_MAX;
            for (Mask c = rem; c; c &= c - 1) {
                int e = lowest(c);
                int d = count(adj[e] & rem);
                if (d < best) {
                    best = d;
                    v = e;
                }
            }
            Mask clique = bit(v);
            Mask common = adj[v] & rem;
            while (common) {
                int u = lowest(common);
                clique |= bit(u);
                common &= adj[u] & ~bit(u);
            }
            rem &= ~clique;
            if (++cliques >= need) return false;
        }
        return true;
    }

    const Problem& p_;
    const MaskGroup& g_;
    Budget& budget_;
    std::function<bool()> stop_;
    bool lex_;
    Mask found_ = 0;
};

struct Task {
    const Problem* problem;
    Node node;
};

enum class Collect {
    any,   // stop at the first solution anywhere
    first, // tasks are in lexicographic order; want the earliest task's solution
    min,   // want the lexicographically smallest solution over all tasks
};

bool lex_less(Mask a, Mask b) {
    Mask diff = a ^ b;
    return diff && (a & (diff & -diff));
}

// Root node of a problem restricted to `allowed`, optionally with `forced` included.
std::optional<Node> root_node(const Problem& p, Budget& budget, Mask allowed, int forced, bool lex) {
    Node node{0, 0, 0, allowed};
    if (forced < 0) return node;
    Searcher s(p, budget, nullptr, lex);
    s.charge();
    int pick = -1;
    Outcome out = s.analyse(node, pick);
    if (out != Outcome::branch || !((node.cand >> forced) & 1U)) return std::nullopt;
    return s.include(node, forced);
}

// Splits tasks one branching level at a time until there are enough for the workers.
std::vector<Task> split_tasks(std::vector<Task> tasks, Budget& budget, int workers, bool lex) {
    const std::size_t wanted = static_cast<std::size_t>(workers) * 8;
    for (int round = 0; round < 6 && workers > 1 && tasks.size() < wanted; ++round) {
        std::vector<Task> next;
        for (const auto& t : tasks) {
            Searcher s(*t.problem, budget, nullptr, lex);
            s.charge();
            Node node = t.node;
            int pick = -1;
            switch (s.analyse(node, pick)) {
            case Outcome::pruned: break;
            case Outcome::solved: next.push_back(t); break;
            case Outcome::branch:
                next.push_back({t.problem, s.include(node, pick)});
                next.push_back({t.problem, Searcher::exclude(node, pick)});
                break;
            }
        }
        tasks = std::move(next);
    }
    return tasks;
}

std::optional<Mask> run_tasks(const std::vector<Task>& tasks, Budget& budget, int workers, Collect collect) {
    const bool lex = collect != Collect::any;
    std::vector<std::optional<Mask>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_hit{SIZE_MAX};
    std::atomic<bool> failed{false};

    auto worker = [&] {
        while (true) {
            if (budget.exhausted.load(std::memory_order_relaxed)) return;
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            if (collect != Collect::min && i > first_hit.load()) {
                if (collect == Collect::any) return;
                continue;
            }
            std::function<bool()> stop;
            if (collect == Collect::any)
                stop = [&] { return first_hit.load(std::memory_order_relaxed) != SIZE_MAX; };
            else if (collect == Collect::first)
                stop = [&, i] { return first_hit.load(std::memory_order_relaxed) < i; };
            Searcher s(*tasks[i].problem, budget, stop, lex);
            try {
                results[i] = s.run(tasks[i].node);
            } catch (const BudgetExhausted&) {
                failed = true;
                return;
            }
            if (results[i]) {
                std::size_t cur = first_hit.load();
                while (i < cur && !first_hit.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };

    if (workers <= 1 || tasks.size() <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failed || budget.exhausted) throw BudgetExhausted{};

    std::optional<Mask> best;
    for (const auto& r : results) {
        if (!r) continue;
        if (collect != Collect::min) return r;
        if (!best || lex_less(*r, *best)) best = r;
    }
    return best;
}

// Representatives of G / mG: sigma of an m-set can be moved into this list by a translation.
std::vector<int> sigma_representatives(const FiniteAbelianGroup& G, int m) {
    const auto n = G.order();
    std::vector<char> image(static_cast<std::size_t>(n), 0);
    for (std::int64_t g = 0; g < n; ++g) image[G.scale_index(m, g)] = 1;
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    std::vector<int> reps;
    for (std::int64_t g = 0; g < n; ++g) {
        if (covered[g]) continue;
        reps.push_back(static_cast<int>(g));
        for (std::int64_t h = 0; h < n; ++h)
            if (image[h]) covered[G.add_index(g, h)] = 1;
    }
    return reps;
}

ElementSet from_mask(const FiniteAbelianGroup& G, Mask m) {
    std::vector<std::int64_t> idx;
    for (; m; m &= m - 1) idx.push_back(lowest(m));
    return ElementSet::from_indices(G, idx);
}

ElementSet first_elements(const FiniteAbelianGroup& G, int count_) {
    std::vector<std::int64_t> idx(static_cast<std::size_t>(count_));
    std::iota(idx.begin(), idx.end(), 0);
    return ElementSet::from_indices(G, idx);
}

std::optional<Mask> search_free(const FiniteAbelianGroup& G, const MaskGroup& MG, int k, int m,
                                const SearchConfig& config, bool lexicographic, Budget& budget) {
    const int n = MG.n();
    const bool complement = (m - k) <= (k - 1);
    std::vector<Problem> problems;
    std::vector<Task> tasks;
    problems.reserve(static_cast<std::size_t>(n) + 1);

    if (lexicographic) {
        // the smallest free set contains 0 (translate any free set by minus its first element)
        if (complement) {
            for (int x = 0; x < n; ++x) problems.push_back(make_problem(MG, G, k, m, x, true));
        } else {
            problems.push_back(make_problem(MG, G, k, m, -1, false));
        }
        for (const auto& p : problems)
            if (auto root = root_node(p, budget, MG.full(), 0, true)) tasks.push_back({&p, *root});
        tasks = split_tasks(std::move(tasks), budget, config.worker_count, true);
        return run_tasks(tasks, budget, config.worker_count, complement ? Collect::min : Collect::first);
    }

    std::vector<int> reps = config.use_affine_reduction ? sigma_representatives(G, m) : std::vector<int>{};
    if (!config.use_affine_reduction) {
        reps.resize(static_cast<std::size_t>(n));
        std::iota(reps.begin(), reps.end(), 0);
    }
    for (int x : reps) problems.push_back(make_problem(MG, G, k, m, x, complement));

    const bool dilate = config.use_affine_reduction && G.is_cyclic() && reps.size() == 1;
    for (const auto& p : problems) {
        if (dilate) {
            // every set whose smallest gcd(a, n) is d has a unit multiple containing d
            for (std::int64_t d : divisors(n)) {
                if (d == n) continue;
                Mask allowed = 0;
                for (int a = 0; a < n; ++a)
                    if (std::gcd<std::int64_t>(a, n) >= d) allowed |= bit(a);
                if (auto root = root_node(p, budget, allowed, static_cast<int>(d), false))
                    tasks.push_back({&p, *root});
            }
        } else {
            tasks.push_back({&p, Node{0, 0, 0, MG.full()}});
        }
    }
    tasks = split_tasks(std::move(tasks), budget, config.worker_count, false);
    return run_tasks(tasks, budget, config.worker_count, Collect::any);
}

void check_search_group(const FiniteAbelianGroup& G) {
    if (G.order() > kMaxSearchOrder)
        throw std::invalid_argument("exhaustive search supports groups of order at most " +
                                    std::to_string(kMaxSearchOrder) + ", got " + std::to_string(G.order()));
}

ElementSet verified(ElementSet s, int k) {
    if (auto bad = find_k_barycentric_subset(s, k))
        throw std::logic_error("search returned a set with the " + std::to_string(k) + "-barycentric subset {" +
                               bad->to_string() + "}");
    return s;
}

} // namespace

std::optional<ElementSet> find_free_set(const FiniteAbelianGroup& G, int k, int m, const SearchConfig& config,
                                        bool lexicographic) {
    config.validate();
    if (k < 1) throw std::invalid_argument("k must be positive");
    check_search_group(G);
    const int n = static_cast<int>(G.order());
    if (m < 0 || m > n) return std::nullopt;
    if (m < k) return first_elements(G, m);
    if (k == 1) return std::nullopt;
    MaskGroup MG(G);
    Budget budget;
    budget.limit = config.node_budget;
    try {
        auto found = search_free(G, MG, k, m, config, lexicographic, budget);
        if (!found) return std::nullopt;
        return verified(from_mask(G, *found), k);
    } catch (const BudgetExhausted&) {
        throw SearchInconclusive(k, n + 1, ElementSet(G));
    }
}

BOResult bo_exhaustive(const FiniteAbelianGroup& G, int k, const SearchConfig& config) {
    config.validate();
    if (k < 1) throw std::invalid_argument("BO(k, G) is only defined here for k >= 1");
    const auto start = std::chrono::steady_clock::now();
    const std::int64_t n = G.order();

    auto finish = [&](std::int64_t value, ElementSet witness, Method method, std::uint64_t nodes) {
        BOResult r{G, k, value, std::move(witness), method, {}, nodes};
        r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
        return r;
    };

    // singletons are 1-barycentric; no 2-set is barycentric; no k-subsets when k > |G|
    if (k == 1) return finish(1, ElementSet(G), Method::closed_form, 0);
    if (k == 2 || k > n) return finish(n + 1, verified(ElementSet::full(G), k), Method::closed_form, 0);

    check_search_group(G);
    MaskGroup MG(G);
    Budget budget;
    budget.limit = config.node_budget;

    ElementSet best = first_elements(G, k - 1);
    try {
        int m = k;
        while (m <= n) {
            auto found = search_free(G, MG, k, m, config, false, budget);
            if (!found) break;
            // grow greedily: any larger free set found here skips whole levels
            ElementSet grown = verified(from_mask(G, *found), k);
            for (std::int64_t c = 0; c < n; ++c) {
                if (grown.contains_index(c)) continue;
                ElementSet trial = grown;
                trial.insert_index(c);
                if (!has_k_barycentric_subset(trial, k)) grown = std::move(trial);
            }
            best = grown;
            m = static_cast<int>(best.size()) + 1;
        }
        const int max_free = static_cast<int>(best.size());
        ElementSet witness = best;
        if (max_free == n) {
            witness = ElementSet::full(G);
        } else if (max_free >= k) {
            auto lex = search_free(G, MG, k, max_free, config, true, budget);
            if (!lex) throw std::logic_error("lexicographic search lost a known free set");
            witness = from_mask(G, *lex);
        }
        return finish(max_free + 1, verified(std::move(witness), k), Method::exhaustive,
                      budget.nodes.load());
    } catch (const BudgetExhausted&) {
        throw SearchInconclusive(static_cast<std::int64_t>(best.size()) + 1, n + 1, best);
    }
}

ElementSet max_barycentric_free(const FiniteAbelianGroup& G, int k, const SearchConfig& config) {
    return bo_exhaustive(G, k, config).witness;
}

} // namespace bary
