#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "esp/report.hpp"

namespace esp {

struct SuiteConfig {
    int p = 3;
    int n = 2;
    std::vector<std::string> suites;  // empty means all supported ones
    int degree_bound = -1;            // -1 = 2(p^n - p^{n-1})
    int jobs = 1;
    std::string format = "text";  // text | json
    std::uint64_t seed = 0;
    bool allow_large = false;  // permits (3,3): 1120 Lagrangians
    bool no_timing = false;    // report elapsed_ms as 0 for stable output
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string>& all_suite_names();
int effective_degree_bound(const SuiteConfig& cfg);
bool suite_supported(const std::string& suite, const SuiteConfig& cfg);

// Runs the selected suites and returns the reports in a fixed enumeration
// order, independent of the jobs hint.  Throws UsageError on bad config.
std::vector<VerificationReport> collect_reports(const SuiteConfig& cfg);

// 0: all pass; 1: at least one mathematical failure; 2: usage error.
int run_suites(const SuiteConfig& cfg, std::ostream& out, std::ostream& err);

// suite-level aggregates over the quantifier grids (also used by tests)
VerificationReport dickson_relation_suite(int p, int m);
VerificationReport muirel_exhaustive_suite(int p);
VerificationReport muirel_sampled_suite(int p, std::uint64_t seed);

}  // namespace esp
