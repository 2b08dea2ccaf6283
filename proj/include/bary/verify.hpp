#pragma once

// Named exhaustive checks of every closed-form statement against the
// search engine or a direct enumeration.

#include "bary/search.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bary {

struct CaseResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CaseResult> cases;

    bool passed() const;
    std::size_t failures() const;
};

struct VerifyOptions {
    std::int64_t max_order = 16;
    std::int64_t max_prime = 13;
    SearchConfig search;
};

/// corner, w1, dsh, proptech, th8, ubpol, chi, sklemma, constructions
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(std::string_view name, const VerifyOptions& options);

} // namespace bary
