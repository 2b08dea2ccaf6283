#pragma once

// The bocalc subcommands as plain functions writing to a stream. Each
// returns a process exit status.

#include "bary/cache.hpp"
#include "bary/search.hpp"
#include "bary/theory.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bary {

enum ExitStatus : int {
    kExitOk = 0,
    kExitFailed = 1,       // a verification suite failed
    kExitUsage = 2,        // bad arguments or violated preconditions
    kExitInconclusive = 3, // node budget exhausted
    kExitInternal = 4,     // theorem contradiction or other bug
};

enum class OutputFormat { table, csv, json };

OutputFormat output_format_from_string(const std::string& s);

struct RunConfig {
    int workers = 1;
    std::optional<std::uint64_t> node_budget;
    /// Empty disables caching.
    std::filesystem::path cache_path;
    OutputFormat format = OutputFormat::table;

    void validate() const;
    SearchConfig search() const;
};

/// Exhaustive search disagreeing with a proved formula; always a bug.
class TheoremContradiction : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct ComputeOutcome {
    BOResult result;
    bool from_cache = false;
    BoundReport bounds;
};

/**
 * BO(k, G) from the cache when a compatible entry exists, else by exhaustive
 * search (then stored). The value is checked against every bound that
 * applies; a mismatch throws TheoremContradiction.
 */
ComputeOutcome compute_bo(const FiniteAbelianGroup& G, int k, const RunConfig& config, ResultCache* cache);

int cmd_compute(const std::string& group, int k, const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& suite, std::int64_t max_order, std::int64_t max_prime, const RunConfig& config,
               std::ostream& out);
int cmd_construct(const std::string& method, std::optional<std::int64_t> n, std::optional<int> k,
                  std::optional<std::int64_t> p, std::optional<int> m, std::ostream& out);
int cmd_bounds(const std::string& group, int k, const RunConfig& config, std::ostream& out);
int cmd_table(std::int64_t p_max, const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace bary
