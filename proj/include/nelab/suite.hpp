#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "nelab/properties.hpp"

namespace nelab {

struct CriterionResult {
    std::string id;
    std::string title;
    bool passed = false;
    std::string details;
};

struct SuiteResult {
    std::uint64_t seed = 42;
    std::vector<CriterionResult> criteria;
    std::vector<CheckReport> battery;

    bool all_passed() const {
        for (const auto& c : criteria)
            if (!c.passed) return false;
        return true;
    }
};

/// The deterministic check battery: every registry space against the
/// applicable checkers with fixed parameters. Identical output for any
/// worker count.
std::vector<CheckReport> run_battery(std::uint64_t seed, int workers);

/// Battery plus the ten acceptance criteria (exact-identity fixtures, oracle
/// equivalences, predicted finite-dimensional failures, determinism).
SuiteResult run_suite(std::uint64_t seed, int workers);

nlohmann::ordered_json suite_to_json(const SuiteResult& s);

/// One "[PASS]/[FAIL] id title (details)" line per criterion.
std::string format_criteria_lines(const SuiteResult& s);

}  // namespace nelab
