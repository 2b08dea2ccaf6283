#include "bary/commands.hpp"

#include "bary/arith.hpp"
#include "bary/constructions.hpp"
#include "bary/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#ifndef BARY_VERSION
#define BARY_VERSION "0.0.0"
#endif

namespace bary {

using nlohmann::json;

OutputFormat output_format_from_string(const std::string& s) {
    if (s == "table") return OutputFormat::table;
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown format '" + s + "' (expected table, csv or json)");
}

void RunConfig::validate() const {
    if (workers < 1) throw std::invalid_argument("--workers must be at least 1");
    search().validate();
}

SearchConfig RunConfig::search() const {
    SearchConfig c;
    c.worker_count = workers;
    c.node_budget = node_budget;
    return c;
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

json elements_json(const ElementSet& s) {
    json arr = json::array();
    if (s.group().is_cyclic()) {
        for (auto i : s.indices()) arr.push_back(i);
    } else {
        for (const auto& g : s.elements()) arr.push_back(s.group().format(g));
    }
    return arr;
}

json bound_list(const std::vector<Bound>& bounds) {
    json arr = json::array();
    for (const auto& b : bounds) arr.push_back({{"value", b.value}, {"tag", b.tag}});
    return arr;
}

// Theorem tags that say something about (G, k), without duplicates and without "trivial".
std::string tag_summary(const BoundReport& rep) {
    std::vector<std::string> tags;
    auto add = [&](const std::string& t) {
        if (t != "trivial" && std::find(tags.begin(), tags.end(), t) == tags.end()) tags.push_back(t);
    };
    for (const auto& b : rep.lower_bounds) add(b.tag);
    for (const auto& b : rep.upper_bounds) add(b.tag);
    std::string out;
    for (const auto& t : tags) out += (out.empty() ? "" : " ") + t;
    return out;
}

void check_against_theory(const BOResult& r, const BoundReport& rep) {
    auto fail = [&](const std::string& why) {
        std::ostringstream s;
        s << "theorem contradiction (" << why << ") for " << r.group.pretty() << ", k=" << r.k << ": BO=" << r.value
          << ", witness {" << r.witness.to_string() << "}";
        throw TheoremContradiction(s.str());
    };
    if (auto c = bo_corner(r.group, r.k); c && *c != r.value) fail("corner value " + std::to_string(*c));
    if (rep.exact && rep.exact->value != r.value)
        fail(rep.exact->tag + " value " + std::to_string(rep.exact->value));
    for (const auto& b : rep.lower_bounds)
        if (r.value < b.value) fail(b.tag + " lower bound " + std::to_string(b.value));
    for (const auto& b : rep.upper_bounds)
        if (r.value > b.value) fail(b.tag + " upper bound " + std::to_string(b.value));
}

FiniteAbelianGroup parse_group(const std::string& text) {
    try {
        return FiniteAbelianGroup::parse(text);
    } catch (const std::exception& ex) {
        throw std::invalid_argument("bad --group '" + text + "': " + ex.what());
    }
}

void print_result(const ComputeOutcome& o, OutputFormat format, std::ostream& out) {
    const BOResult& r = o.result;
    switch (format) {
    case OutputFormat::json:
        out << json{{"group", r.group.to_string()},
                    {"k", r.k},
                    {"value", r.value},
                    {"witness", elements_json(r.witness)},
                    {"method", std::string(to_string(r.method))},
                    {"cached", o.from_cache},
                    {"nodes", r.nodes},
                    {"elapsed_ms", static_cast<double>(r.elapsed.count()) / 1e6}}
                   .dump(2)
            << '\n';
        break;
    case OutputFormat::csv:
        out << "group,k,value,witness,method\n"
            << csv_quote(r.group.to_string()) << ',' << r.k << ',' << r.value << ',' << csv_quote(r.witness.to_string())
            << ',' << to_string(r.method) << '\n';
        break;
    case OutputFormat::table:
        out << "group    " << r.group.pretty() << '\n'
            << "k        " << r.k << '\n'
            << "BO       " << r.value << '\n'
            << "witness  {" << r.witness.to_string() << "}\n"
            << "method   " << to_string(r.method) << (o.from_cache ? " (cached)" : "") << '\n';
        break;
    }
}

} // namespace

ComputeOutcome compute_bo(const FiniteAbelianGroup& G, int k, const RunConfig& config, ResultCache* cache) {
    config.validate();
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    ComputeOutcome o{BOResult{G, k, 0, ElementSet(G), Method::exhaustive, {}, 0}, false, bound_report(G, k)};
    const std::string key = G.to_string();
    if (cache) {
        if (auto e = cache->find_compatible(key, k, BARY_VERSION)) {
            o.result.value = e->value;
            o.result.witness = ElementSet::parse(G, e->witness);
            o.result.method = method_from_string(e->method);
            o.from_cache = true;
        }
    }
    if (!o.from_cache) {
        o.result = bo_exhaustive(G, k, config.search());
        if (cache)
            cache->put(CacheEntry{key, k, o.result.value, o.result.witness.to_string(),
                                  std::string(to_string(o.result.method)), BARY_VERSION, iso_timestamp_now()});
    }
    check_against_theory(o.result, o.bounds);
    return o;
}

int cmd_compute(const std::string& group, int k, const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto G = parse_group(group);
    std::optional<ResultCache> cache;
    if (!config.cache_path.empty()) {
        cache.emplace(config.cache_path);
        for (const auto& r : cache->rejected()) err << "warning: rejected cache entry " << r << '\n';
    }
    try {
        print_result(compute_bo(G, k, config, cache ? &*cache : nullptr), config.format, out);
    } catch (const SearchInconclusive& ex) {
        err << "inconclusive: node budget exhausted, " << ex.lower << " <= BO(" << k << ", " << G.pretty()
            << ") <= " << ex.upper << "; largest free set found {" << ex.best.to_string() << "}\n";
        return kExitInconclusive;
    }
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::int64_t max_order, std::int64_t max_prime, const RunConfig& config,
               std::ostream& out) {
    config.validate();
    VerifyOptions opts{max_order, max_prime, config.search()};
    std::vector<std::string> names;
    if (suite == "all") names = suite_names();
    else names.push_back(suite);

    bool ok = true;
    json reports = json::array();
    if (config.format == OutputFormat::csv) out << "suite,case,pass,detail\n";
    for (const auto& name : names) {
        SuiteReport rep = run_suite(name, opts);
        ok = ok && rep.passed();
        switch (config.format) {
        case OutputFormat::json: {
            json cases = json::array();
            for (const auto& c : rep.cases) cases.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            reports.push_back({{"suite", rep.suite}, {"passed", rep.passed()}, {"cases", cases}});
            break;
        }
        case OutputFormat::csv:
            for (const auto& c : rep.cases)
                out << rep.suite << ',' << csv_quote(c.name) << ',' << (c.pass ? "pass" : "fail") << ','
                    << csv_quote(c.detail) << '\n';
            break;
        case OutputFormat::table:
            for (const auto& c : rep.cases)
                out << (c.pass ? "PASS  " : "FAIL  ") << rep.suite << "  " << c.name << "  " << c.detail << '\n';
            out << rep.suite << ": " << rep.cases.size() - rep.failures() << "/" << rep.cases.size() << " passed\n";
            break;
        }
    }
    if (config.format == OutputFormat::json) out << reports.dump(2) << '\n';
    return ok ? kExitOk : kExitFailed;
}

int cmd_construct(const std::string& method, std::optional<std::int64_t> n, std::optional<int> k,
                  std::optional<std::int64_t> p, std::optional<int> m, std::ostream& out) {
    auto need = [](const auto& v, const char* flag, const std::string& for_method) {
        if (!v) throw std::invalid_argument("--method " + for_method + " requires " + flag);
        return *v;
    };
    const WitnessRecord rec = [&] {
        switch (witness_method_from_string(method)) {
        case WitnessMethod::lb: return lb_witness(need(n, "--n", method), need(k, "--k", method));
        case WitnessMethod::th8: return th8_witness(p ? *p : need(n, "--p", method));
        case WitnessMethod::behrend: return behrend_witness(need(n, "--n", method), need(k, "--k", method), m);
        case WitnessMethod::corner: break;
        }
        throw std::invalid_argument("--method must be lb, th8 or behrend");
    }();
    json j{{"n", rec.n},
           {"k", rec.k},
           {"method", std::string(to_string(rec.method))},
           {"params", json::object()},
           {"elements", elements_json(rec.set)},
           {"size", rec.set.size()},
           {"verified", rec.verified},
           {"brute_checked", rec.brute_checked}};
    if (rec.behrend) {
        const auto& b = *rec.behrend;
        j["params"] = {{"d", b.d}, {"m", b.m}, {"r", b.r}, {"base", b.base}};
        j["degenerate"] = rec.degenerate;
    }
    out << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_bounds(const std::string& group, int k, const RunConfig& config, std::ostream& out) {
    const auto G = parse_group(group);
    const BoundReport rep = bound_report(G, k);
    switch (config.format) {
    case OutputFormat::json: {
        json exact = nullptr;
        if (rep.exact) exact = {{"value", rep.exact->value}, {"tag", rep.exact->tag}};
        out << json{{"group", G.to_string()},
                    {"k", k},
                    {"lower_bounds", bound_list(rep.lower_bounds)},
                    {"upper_bounds", bound_list(rep.upper_bounds)},
                    {"exact", exact},
                    {"best_lower", rep.best_lower()},
                    {"best_upper", rep.best_upper()}}
                   .dump(2)
            << '\n';
        break;
    }
    case OutputFormat::csv:
        out << "kind,value,tag\n";
        for (const auto& b : rep.lower_bounds) out << "lower," << b.value << ',' << b.tag << '\n';
        for (const auto& b : rep.upper_bounds) out << "upper," << b.value << ',' << b.tag << '\n';
        if (rep.exact) out << "exact," << rep.exact->value << ',' << rep.exact->tag << '\n';
        break;
    case OutputFormat::table:
        out << "BO(" << k << ", " << G.pretty() << ")\n";
        for (const auto& b : rep.lower_bounds) out << "  >= " << std::setw(8) << std::left << b.value << b.tag << '\n';
        for (const auto& b : rep.upper_bounds) out << "  <= " << std::setw(8) << std::left << b.value << b.tag << '\n';
        if (rep.exact) out << "  =  " << std::setw(8) << std::left << rep.exact->value << rep.exact->tag << '\n';
        out << "  range [" << rep.best_lower() << ", " << rep.best_upper() << "]\n";
        break;
    }
    return kExitOk;
}

int cmd_table(std::int64_t p_max, const RunConfig& config, std::ostream& out, std::ostream& err) {
    config.validate();
    if (p_max < 7) throw std::invalid_argument("--max-prime must be at least 7");
    if (p_max > kMaxSearchOrder)
        throw std::invalid_argument("--max-prime above " + std::to_string(kMaxSearchOrder) +
                                    " is beyond exhaustive search");
    std::vector<std::pair<std::int64_t, int>> jobs;
    for (std::int64_t p : primes_between(7, p_max))
        for (int k = 3; k <= p - 3; ++k) jobs.emplace_back(p, k);

    std::optional<ResultCache> cache;
    if (!config.cache_path.empty()) {
        cache.emplace(config.cache_path);
        for (const auto& r : cache->rejected()) err << "warning: rejected cache entry " << r << '\n';
    }
    RunConfig single = config;
    single.workers = 1;
    std::vector<std::optional<ComputeOutcome>> rows(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
            try {
                rows[i] = compute_bo(FiniteAbelianGroup::cyclic(jobs[i].first), jobs[i].second, single,
                                     cache ? &*cache : nullptr);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const auto threads = std::min<std::size_t>(static_cast<std::size_t>(config.workers), jobs.size());
        for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
        work();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    switch (config.format) {
    case OutputFormat::json: {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"p", r->result.group.order()},
                           {"k", r->result.k},
                           {"BO", r->result.value},
                           {"witness", elements_json(r->result.witness)},
                           {"theorems", tag_summary(r->bounds)}});
        out << arr.dump(2) << '\n';
        break;
    }
    case OutputFormat::csv:
        out << "p,k,BO,witness,theorems\n";
        for (const auto& r : rows)
            out << r->result.group.order() << ',' << r->result.k << ',' << r->result.value << ','
                << csv_quote(r->result.witness.to_string()) << ',' << csv_quote(tag_summary(r->bounds)) << '\n';
        break;
    case OutputFormat::table:
        out << std::left << std::setw(5) << "p" << std::setw(5) << "k" << std::setw(5) << "BO" << std::setw(36)
            << "witness" << "theorems\n";
        for (const auto& r : rows)
            out << std::left << std::setw(5) << r->result.group.order() << std::setw(5) << r->result.k << std::setw(5)
                << r->result.value << std::setw(36) << ("{" + r->result.witness.to_string() + "}")
                << tag_summary(r->bounds) << '\n';
        break;
    }
    return kExitOk;
}

} // namespace bary
