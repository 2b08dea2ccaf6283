#include "bary/verify.hpp"

#include "bary/arith.hpp"
#include "bary/barycentric.hpp"
#include "bary/constructions.hpp"
#include "bary/theory.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bary {

bool SuiteReport::passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
    std::size_t n = 0;
    for (const auto& c : cases) n += c.pass ? 0 : 1;
    return n;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"corner", "w1",    "dsh",     "proptech",     "th8",
                                                "ubpol",  "chi",   "sklemma", "constructions"};
    return names;
}

namespace {

std::string label(const FiniteAbelianGroup& G, int k) { return G.pretty() + " k=" + std::to_string(k); }

std::string label(std::int64_t n, int k) { return "Z/" + std::to_string(n) + " k=" + std::to_string(k); }

// Runs `body`, turning exceptions into failed cases.
void run_case(SuiteReport& rep, std::string name, const std::function<CaseResult()>& body) {
    try {
        CaseResult c = body();
        c.name = std::move(name);
        rep.cases.push_back(std::move(c));
    } catch (const std::exception& ex) {
        rep.cases.push_back({std::move(name), false, std::string("exception: ") + ex.what()});
    }
}

CaseResult compare(std::int64_t got, std::int64_t want) {
    return {"", got == want, "BO=" + std::to_string(got) + " expected " + std::to_string(want)};
}

// Subsets of Z/p as bitmasks, p <= 20.
template <class F>
void for_each_subset(std::int64_t p, F&& f) {
    for (std::uint32_t m = 1; m < (1U << p); ++m) {
        std::vector<std::int64_t> idx;
        for (std::int64_t i = 0; i < p; ++i)
            if ((m >> i) & 1U) idx.push_back(i);
        f(ElementSet::of_residues(p, idx));
    }
}

void corner_suite(SuiteReport& rep, const VerifyOptions& o) {
    for (std::int64_t n = 2; n <= o.max_order; ++n) {
        for (const auto& G : enumerate_groups(n)) {
            std::vector<std::int64_t> ks{1, 2, n - 2, n - 1, n, n + 1};
            std::sort(ks.begin(), ks.end());
            ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
            for (std::int64_t k : ks) {
                if (k < 1) continue;
                run_case(rep, label(G, static_cast<int>(k)), [&] {
                    auto want = bo_corner(G, static_cast<int>(k));
                    if (!want) return CaseResult{"", false, "no corner formula"};
                    return compare(bo_exhaustive(G, static_cast<int>(k), o.search).value, *want);
                });
            }
        }
    }
}

void w1_suite(SuiteReport& rep, const VerifyOptions& o) {
    for (std::int64_t p : primes_between(7, o.max_prime)) {
        for (int k = 3; k <= p - 3; ++k) {
            run_case(rep, label(p, k), [&] {
                auto [lo, hi] = w1_bounds(p, k);
                auto v = bo_exhaustive(FiniteAbelianGroup::cyclic(p), k, o.search).value;
                return CaseResult{"", lo <= v && v <= hi,
                                  std::to_string(lo) + " <= " + std::to_string(v) + " <= " + std::to_string(hi)};
            });
        }
    }
}

void dsh_suite(SuiteReport& rep, const VerifyOptions& o) {
    for (std::int64_t p : primes_between(2, std::min<std::int64_t>(o.max_prime, 19))) {
        run_case(rep, "Z/" + std::to_string(p) + " all subsets", [&] {
            std::size_t checked = 0;
            std::string bad;
            for_each_subset(p, [&](const ElementSet& A) {
                const auto a = static_cast<std::int64_t>(A.size());
                for (std::int64_t k = 1; k <= a && bad.empty(); ++k) {
                    ++checked;
                    const auto got = static_cast<std::int64_t>(sigma_k(A, static_cast<int>(k)).size());
                    if (got < dsh_bound(p, a, k))
                        bad = "A={" + A.to_string() + "} k=" + std::to_string(k) + " |Sigma_k|=" + std::to_string(got);
                }
            });
            if (!bad.empty()) return CaseResult{"", false, bad};
            return CaseResult{"", true, std::to_string(checked) + " (A, k) pairs"};
        });
    }
}

void proptech_suite(SuiteReport& rep, const VerifyOptions& o) {
    for (std::int64_t n = 6; n <= std::min<std::int64_t>(o.max_order, kMaxSearchOrder); ++n) {
        for (int k = 3; k <= n - 3; ++k) {
            auto want = proptech_value(n, k);
            if (!want) continue;
            run_case(rep, label(n, k), [&] {
                return compare(bo_exhaustive(FiniteAbelianGroup::cyclic(n), k, o.search).value, *want);
            });
        }
    }
}

void th8_suite(SuiteReport& rep, const VerifyOptions& o) {
    for (std::int64_t p : primes_between(7, std::min<std::int64_t>(o.max_prime, kMaxSearchOrder))) {
        auto [k, want] = th8_value(p);
        run_case(rep, label(p, k), [&, k = k, want = want] {
            return compare(bo_exhaustive(FiniteAbelianGroup::cyclic(p), k, o.search).value, want);
        });
    }
}

// a + a' + k b = 0 for distinct a, a', b in A
bool has_solution(const ElementSet& A, std::int64_t k) { return s_k_set(A, k).contains_index(0); }

void ubpol_suite(SuiteReport& rep, const VerifyOptions& o) {
    for (std::int64_t p : primes_between(7, std::min<std::int64_t>(o.max_prime, kMaxSearchOrder))) {
        for (int k = static_cast<int>(ceil_div(p + 2, 3)); k <= p - 3; ++k) {
            run_case(rep, label(p, k), [&] {
                auto [lo, hi] = ubpol_bounds(p, k);
                auto v = bo_exhaustive(FiniteAbelianGroup::cyclic(p), k, o.search).value;
                return CaseResult{"", lo <= v && v <= hi,
                                  std::to_string(v) + " in {" + std::to_string(lo) + "," + std::to_string(hi) + "}"};
            });
        }
        if (p > 19) continue;
        run_case(rep, "Z/" + std::to_string(p) + " a+a'+kb=0 solvable", [&] {
            std::size_t checked = 0;
            std::string bad;
            for_each_subset(p, [&](const ElementSet& A) {
                const auto k = static_cast<std::int64_t>(A.size()) - 2;
                if (!bad.empty() || k < 3 || k > p - 3 || 3 * k < p + 2) return;
                if (A.group().index_of(sigma_set(A)) != 0) return;
                ++checked;
                if (!has_solution(A, k)) bad = "A={" + A.to_string() + "}";
            });
            if (!bad.empty()) return CaseResult{"", false, "no solution for " + bad};
            return CaseResult{"", true, std::to_string(checked) + " sets"};
        });
    }
}

void chi_suite(SuiteReport& rep, const VerifyOptions& o) {
    run_case(rep, "closed form = six-term sum, c_i <= 8, 2 <= k <= 11", [] {
        std::size_t checked = 0;
        for (int c1 = 0; c1 <= 8; ++c1)
            for (int c2 = 0; c2 <= 8; ++c2)
                for (int c3 = 0; c3 <= 8; ++c3)
                    for (int k = 2; k <= 11; ++k) {
                        ChiParams q{k, 0, c1, c2, c3};
                        if (q.m() < 0) continue;
                        ++checked;
                        if (chi_closed_form(q) != chi_direct(q)) {
                            std::ostringstream s;
                            s << "mismatch at c=(" << c1 << "," << c2 << "," << c3 << ") k=" << k;
                            return CaseResult{"", false, s.str()};
                        }
                    }
        return CaseResult{"", true, std::to_string(checked) + " parameter sets"};
    });
    for (std::int64_t p : primes_between(3, std::max<std::int64_t>(o.max_prime, 31))) {
        run_case(rep, "alpha specialisation mod " + std::to_string(p), [p] {
            std::size_t checked = 0;
            for (int alpha = 2; 3 * alpha - 4 < p; ++alpha) {
                for (std::int64_t k = 2; k < p; ++k) {
                    ChiParams q{k, p, alpha, alpha - 1, alpha};
                    ++checked;
                    if (chi_alpha(alpha, k) != chi_closed_form(q))
                        return CaseResult{"", false, "formula differs at alpha=" + std::to_string(alpha)};
                    if (chi_mod_p(q) == 0)
                        return CaseResult{"", false,
                                          "vanishes at alpha=" + std::to_string(alpha) + " k=" + std::to_string(k)};
                }
            }
            return CaseResult{"", true, std::to_string(checked) + " (alpha, k) pairs"};
        });
    }
}

void sklemma_suite(SuiteReport& rep, const VerifyOptions& o) {
    for (std::int64_t p : primes_between(5, std::min<std::int64_t>(o.max_prime, 19))) {
        for (int k = 3; k <= p - 1; ++k) {
            if (k + 2 > p) continue;
            run_case(rep, label(p, k), [&] {
                std::size_t checked = 0;
                std::string bad;
                for_each_subset(p, [&](const ElementSet& A) {
                    const auto a = static_cast<std::int64_t>(A.size());
                    if (!bad.empty() || a < k + 2) return;
                    ++checked;
                    const auto got = static_cast<std::int64_t>(s_k_set(A, k).size());
                    const auto want = sk_lemma_bound(p, a, k);
                    if (got < want)
                        bad = "A={" + A.to_string() + "} |S_k|=" + std::to_string(got) + " < " + std::to_string(want);
                });
                if (!bad.empty()) return CaseResult{"", false, bad};
                return CaseResult{"", true, std::to_string(checked) + " sets"};
            });
        }
    }
}

void constructions_suite(SuiteReport& rep, const VerifyOptions& o) {
    const std::int64_t n_max = std::max<std::int64_t>(o.max_order, 60);
    run_case(rep, "lb witnesses, 6 <= n <= " + std::to_string(n_max), [&] {
        std::size_t checked = 0;
        for (std::int64_t n = 6; n <= n_max; ++n)
            for (int k = 3; k <= n - 3; ++k) {
                if (std::gcd<std::int64_t>(n, k) != 1) continue;
                auto w = lb_witness(n, k);
                ++checked;
                if (!w.verified || has_k_barycentric_subset(w.set, k)) return CaseResult{"", false, label(n, k)};
            }
        return CaseResult{"", true, std::to_string(checked) + " witnesses"};
    });
    run_case(rep, "th8 witnesses, p <= " + std::to_string(std::max<std::int64_t>(o.max_prime, 31)), [&] {
        std::size_t checked = 0;
        for (std::int64_t p : primes_between(7, std::max<std::int64_t>(o.max_prime, 31))) {
            if (mult_order(2, p) % 2 != 0) continue;
            auto w = th8_witness(p);
            ++checked;
            if (has_k_barycentric_subset(w.set, w.k)) return CaseResult{"", false, "p=" + std::to_string(p)};
        }
        return CaseResult{"", true, std::to_string(checked) + " primes"};
    });
    for (int k : {3, 5}) {
        run_case(rep, "behrend witnesses, k=" + std::to_string(k) + ", n <= 5000", [k] {
            std::size_t checked = 0;
            for (std::int64_t n = std::max(6, k + 3); n <= 5000; ++n) {
                auto w = behrend_witness(n, k);
                ++checked;
                const auto need = static_cast<std::int64_t>(std::ceil(behrend_bound(n, k)));
                if (!w.brute_checked || has_k_barycentric_subset(w.set, k))
                    return CaseResult{"", false, "not free at n=" + std::to_string(n)};
                if (static_cast<std::int64_t>(w.set.size()) < need)
                    return CaseResult{"", false, "below the bound at n=" + std::to_string(n)};
            }
            return CaseResult{"", true, std::to_string(checked) + " witnesses"};
        });
    }
}

} // namespace

SuiteReport run_suite(std::string_view name, const VerifyOptions& options) {
    options.search.validate();
    SuiteReport rep{std::string(name), {}};
    if (name == "corner") corner_suite(rep, options);
    else if (name == "w1") w1_suite(rep, options);
    else if (name == "dsh") dsh_suite(rep, options);
    else if (name == "proptech") proptech_suite(rep, options);
    else if (name == "th8") th8_suite(rep, options);
    else if (name == "ubpol") ubpol_suite(rep, options);
    else if (name == "chi") chi_suite(rep, options);
    else if (name == "sklemma") sklemma_suite(rep, options);
    else if (name == "constructions") constructions_suite(rep, options);
    else throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
    return rep;
}

} // namespace bary
