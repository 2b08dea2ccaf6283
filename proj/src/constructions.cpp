#include "bary/constructions.hpp"

#include "bary/arith.hpp"
#include "bary/barycentric.hpp"

#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace bary {

std::string_view to_string(WitnessMethod m) noexcept {
    switch (m) {
    case WitnessMethod::lb: return "lb";
    case WitnessMethod::th8: return "th8";
    case WitnessMethod::behrend: return "behrend";
    case WitnessMethod::corner: return "corner";
    }
    return "unknown";
}

WitnessMethod witness_method_from_string(std::string_view s) {
    if (s == "lb") return WitnessMethod::lb;
    if (s == "th8") return WitnessMethod::th8;
    if (s == "behrend") return WitnessMethod::behrend;
    if (s == "corner") return WitnessMethod::corner;
    throw std::invalid_argument("unknown construction method '" + std::string(s) + "'");
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

void ensure(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error(what);
}

void check_nk(std::int64_t n, int k) {
    require(n >= 6, "n must be at least 6, got " + std::to_string(n));
    require(k >= 3 && k <= n - 3, "k must satisfy 3 <= k <= n-3, got k=" + std::to_string(k));
}

// Direct search is affordable up to roughly this many group operations.
constexpr double kBruteLimit = 5e8;

} // namespace

WitnessRecord lb_witness(std::int64_t n, int k) {
    check_nk(n, k);
    require(std::gcd<std::int64_t>(k, n) == 1, "lb witness needs gcd(k, n) = 1");
    std::vector<std::int64_t> members;
    if (k % 2 == 0) {
        for (int i = 0; i < k; ++i) members.push_back(i);
    } else if (k == 3) {
        members = {0, 1, 3};
    } else {
        for (int i = 0; i <= (k - 1) / 2; ++i) members.push_back(i);
        for (int i = (k + 5) / 2; i <= k; ++i) members.push_back(i);
        members.push_back(k + 2);
    }
    WitnessRecord rec{n, k, WitnessMethod::lb, ElementSet::of_residues(n, members), false, false, false, {}};
    ensure(rec.set.size() == static_cast<std::size_t>(k), "lb witness has the wrong size");
    ensure(!is_barycentric(rec.set), "lb witness is barycentric for n=" + std::to_string(n) + ", k=" + std::to_string(k));
    rec.verified = rec.brute_checked = true;
    return rec;
}

WitnessRecord th8_witness(std::int64_t p) {
    require(p >= 7 && is_prime(p), "th8 witness needs a prime p >= 7, got " + std::to_string(p));
    const std::int64_t ell = mult_order(2, p);
    require(ell % 2 == 0, "ord_p(2) = " + std::to_string(ell) + " is odd for p = " + std::to_string(p) +
                              "; no such witness exists");
    const int k = static_cast<int>((p - 1) / 2);

    std::vector<char> covered(static_cast<std::size_t>(p), 0);
    std::vector<std::int64_t> B;
    for (std::int64_t h = 1; h < p; ++h) {
        if (covered[h]) continue;
        std::int64_t x = h;
        for (std::int64_t j = 0; j < ell; ++j) {
            covered[x] = 1;
            if (j % 2 == 0) B.push_back(x);
            x = mod(2 * x, p);
        }
    }
    ElementSet b_set = ElementSet::of_residues(p, B);
    ensure(b_set.size() == static_cast<std::size_t>(k), "th8: |B| != (p-1)/2");
    ensure(b_set.group().index_of(sigma_set(b_set)) == 0, "th8: sigma(B) != 0");
    ElementSet doubled = multiples(2, b_set);
    for (std::int64_t x = 1; x < p; ++x)
        ensure(b_set.contains_index(x) != doubled.contains_index(x), "th8: B and 2B do not partition the units");

    B.push_back(0);
    WitnessRecord rec{p, k, WitnessMethod::th8, ElementSet::of_residues(p, B), false, false, false, {}};
    ensure(!has_k_barycentric_subset(rec.set, k), "th8 witness has a barycentric subset for p=" + std::to_string(p));
    rec.verified = rec.brute_checked = true;
    return rec;
}

std::int64_t behrend_d(std::int64_t n, int k, int m) {
    check_nk(n, k);
    require(m >= 1, "m must be positive");
    const auto N = static_cast<std::uint64_t>(n / k);
    require(N >= 1, "floor(n/k) must be positive");
    const std::uint64_t root = integer_root(N, static_cast<unsigned>(m));
    const auto d = static_cast<std::int64_t>((root - 1) / static_cast<std::uint64_t>(k - 1)) + 1;
    std::uint64_t lo = 0;
    ensure(pow_at_most(static_cast<std::uint64_t>((k - 1) * (d - 1) + 1), m, N, &lo), "behrend_d: lower end");
    ensure(!pow_at_most(static_cast<std::uint64_t>((k - 1) * d + 1), m, N), "behrend_d: upper end");
    return d;
}

namespace {

struct Shell {
    BehrendParams params;
    std::vector<std::int64_t> members;
};

Shell largest_shell(std::int64_t n, int k, int m) {
    const std::int64_t d = behrend_d(n, k, m);
    const std::int64_t base = (k - 1) * (d - 1) + 1;
    std::map<std::int64_t, std::vector<std::int64_t>> shells;
    std::vector<std::int64_t> digits(static_cast<std::size_t>(m), 0);
    while (true) {
        std::int64_t value = 0, norm = 0, place = 1;
        for (int i = 0; i < m; ++i) {
            value += digits[i] * place;
            norm += digits[i] * digits[i];
            place *= base;
        }
        shells[norm].push_back(value);
        int i = 0;
        while (i < m && digits[i] == d - 1) digits[i++] = 0;
        if (i == m) break;
        ++digits[i];
    }
    auto best = shells.begin();
    for (auto it = shells.begin(); it != shells.end(); ++it)
        if (it->second.size() > best->second.size()) best = it;
    Shell out{BehrendParams{n, k, m, d, base, best->first}, best->second};
    std::sort(out.members.begin(), out.members.end());
    if (d >= 2) {
        // nonzero digit vectors spread over the shells r = 1..m(d-1)^2
        std::uint64_t total = 0;
        pow_at_most(static_cast<std::uint64_t>(d), m, UINT64_MAX, &total);
        const auto shell_count = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>((d - 1) * (d - 1));
        ensure(out.members.size() * shell_count >= total - 1, "behrend: shell below the pigeonhole size");
    }
    return out;
}

// Digit vectors of (k-1)-fold sums never carry, so integer and digitwise addition agree.
void check_no_carry(const Shell& s) {
    const auto& P = s.params;
    auto digits_of = [&](std::int64_t v) {
        std::vector<std::int64_t> out(static_cast<std::size_t>(P.m));
        for (int i = 0; i < P.m; ++i) {
            out[i] = v % P.base;
            v /= P.base;
        }
        return out;
    };
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, s.members.size() - 1);
    for (int trial = 0; trial < 64; ++trial) {
        std::int64_t total = 0;
        std::vector<std::int64_t> digit_sum(static_cast<std::size_t>(P.m), 0);
        for (int j = 0; j < P.k - 1; ++j) {
            std::int64_t a = s.members[pick(rng)];
            total += a;
            auto dg = digits_of(a);
            for (int i = 0; i < P.m; ++i) digit_sum[i] += dg[i];
        }
        ensure(digits_of(total) == digit_sum, "behrend: digit addition carried");
    }
}

} // namespace

WitnessRecord behrend_witness(std::int64_t n, int k, std::optional<int> m) {
    check_nk(n, k);
    const auto N = static_cast<std::uint64_t>(n / k);
    require(N >= 1, "floor(n/k) must be positive");

    std::optional<Shell> best;
    auto consider = [&](int mm) {
        Shell s = largest_shell(n, k, mm);
        if (!best || s.members.size() > best->members.size() ||
            (s.members.size() == best->members.size() && s.params.r < best->params.r))
            best = std::move(s);
    };
    if (m) {
        require(*m >= 1, "m must be positive");
        consider(*m);
    } else {
        consider(1);
        for (unsigned mm = 2; mm < 64 && integer_root(N, mm) >= static_cast<std::uint64_t>(k); ++mm)
            consider(static_cast<int>(mm));
    }

    ensure(static_cast<std::int64_t>(k) * best->members.back() <= n, "behrend: k * max(A_r) exceeds n");
    check_no_carry(*best);

    WitnessRecord rec{n, k, WitnessMethod::behrend, ElementSet::of_residues(n, best->members), false, false,
                      best->params.d == 1, best->params};
    const double cost = static_cast<double>(rec.set.size()) * k * static_cast<double>(n);
    if (cost <= kBruteLimit) {
        ensure(!has_k_barycentric_subset(rec.set, k), "behrend witness has a barycentric subset for n=" +
                                                           std::to_string(n) + ", k=" + std::to_string(k));
        rec.brute_checked = true;
    }
    // otherwise freeness rests on the shell being strictly convex and carry-free
    rec.verified = true;
    return rec;
}

} // namespace bary
