// bocalc: barycentric Olson constants from the command line.

#include "bary/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace bary;

    CLI::App app{"Compute and verify barycentric Olson constants BO(k, G)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", BARY_VERSION);

    std::string group, method, suite = "all", format = "table";
    std::optional<std::int64_t> p, n;
    std::optional<int> k, m;
    std::optional<std::uint64_t> node_budget;
    std::optional<std::string> cache_path;
    bool no_cache = false;
    int workers = 1;
    std::int64_t max_order = 16, max_prime = 13;

    auto add_run_flags = [&](CLI::App* sub) {
        sub->add_option("--workers", workers, "Search threads")->check(CLI::PositiveNumber);
        sub->add_option("--node-budget", node_budget, "Give up after this many search nodes");
        sub->add_option("--cache", cache_path, std::string("Cache file (default $") + kCacheEnv + ")");
        sub->add_flag("--no-cache", no_cache, "Neither read nor write the cache");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
    };
    auto add_group = [&](CLI::App* sub) {
        auto* g = sub->add_option("--group", group, "Invariant factors n1,n2,... with n1 | n2 | ...");
        auto* q = sub->add_option("--p", p, "Shorthand for the cyclic group Z/p");
        g->excludes(q);
    };

    auto* compute = app.add_subcommand("compute", "Exact BO(k, G) by exhaustive search");
    add_group(compute);
    compute->add_option("--k", k, "k >= 1")->required();
    add_run_flags(compute);

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", suite, "Suite name or 'all'");
    verify->add_option("--max-order", max_order, "Largest group order searched");
    verify->add_option("--max-prime", max_prime, "Largest prime searched");
    add_run_flags(verify);

    auto* construct = app.add_subcommand("construct", "Build a barycentric-free witness set");
    construct->add_option("--method", method, "lb, th8 or behrend")->required();
    construct->add_option("--n", n, "Modulus");
    construct->add_option("--p", p, "Prime modulus (th8)");
    construct->add_option("--k", k, "k");
    construct->add_option("--m", m, "Number of digits (behrend)");

    auto* bounds = app.add_subcommand("bounds", "All known bounds for BO(k, G)");
    add_group(bounds);
    bounds->add_option("--k", k, "k >= 1")->required();
    bounds->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));

    auto* table = app.add_subcommand("table", "BO(k, Z/p) for primes p <= max-prime and 3 <= k <= p-3");
    table->add_option("--max-prime", max_prime, "Largest prime")->required();
    add_run_flags(table);

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        cfg.workers = workers;
        cfg.node_budget = node_budget;
        cfg.format = output_format_from_string(format);
        if (!no_cache) cfg.cache_path = cache_path ? std::filesystem::path(*cache_path) : ResultCache::default_path();

        auto group_text = [&] {
            if (p) return std::to_string(*p);
            if (group.empty()) throw std::invalid_argument("one of --group or --p is required");
            return group;
        };

        if (*compute) return cmd_compute(group_text(), *k, cfg, std::cout, std::cerr);
        if (*verify) {
            cfg.cache_path.clear();
            return cmd_verify(suite, max_order, max_prime, cfg, std::cout);
        }
        if (*construct) return cmd_construct(method, n, k, p, m, std::cout);
        if (*bounds) return cmd_bounds(group_text(), *k, cfg, std::cout);
        if (*table) return cmd_table(max_prime, cfg, std::cout, std::cerr);
    } catch (const TheoremContradiction& ex) {
        std::cerr << "internal error: " << ex.what() << '\n';
        return kExitInternal;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}
