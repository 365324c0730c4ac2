#ifndef ELLIPSUM_REPORT_JSON_HPP
#define ELLIPSUM_REPORT_JSON_HPP

#include <string>
#include <vector>

#include "ellipsum/registry.hpp"

namespace ellipsum {

struct SuiteReport {
    std::uint64_t suite_seed = 0;
    TruncationPolicy policy;
    std::vector<VerificationReport> results;

    bool all_passed() const;
    bool operator==(const SuiteReport& o) const;
};

/// Deterministic JSON rendering of the schema
///   {suite_seed, policy: {tail_tol, max_factors},
///    results: [{id, anchor, trials, tolerance, max_residual, median_residual,
///               failures: [{params, residual}], wall_time, passed}]}.
std::string to_json(const SuiteReport& report, int indent = 2);
SuiteReport suite_report_from_json(const std::string& text);

/// Same JSON with every wall_time field removed (the determinism comparison).
std::string to_json_without_wall_time(const SuiteReport& report, int indent = 2);

/// Flat CSV projection of the results.
std::string to_csv(const SuiteReport& report);

}  // namespace ellipsum

#endif
