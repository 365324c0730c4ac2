#ifndef ELLIPSUM_REGISTRY_HPP
#define ELLIPSUM_REGISTRY_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellipsum/rng.hpp"

namespace ellipsum {

/// One sampled parameter point: the elliptic primitives plus named complex
/// and integer parameters. describe() renders it for failure records.
struct SamplePoint {
    EllipticParams params{cx(1.0, 0.0), cx(0.0, 0.0)};
    std::vector<std::pair<std::string, cx>> values;
    std::vector<std::pair<std::string, long>> degrees;

    cx value(const std::string& name) const;
    long degree(const std::string& name) const;
    std::string describe() const;
};

enum class IdentityKind {
    equality,    // max over (lhs, rhs) pairs of the relative residual
    decreasing,  // residual sequence must strictly decrease (0/1 indicator)
};

/// Registry entry: constrained sampler plus pure evaluators. For equality
/// entries, pairs() returns one or more (lhs, rhs) values per trial; the
/// trial residual is the worst pair. For decreasing entries, sequence()
/// returns the residual-vs-p list and the trial "residual" is 0 when the
/// list strictly decreases, 1 otherwise.
struct Identity {
    std::string id;
    std::string anchor;
    IdentityKind kind = IdentityKind::equality;
    int default_trials = 100;
    double tolerance = 1e-9;

    std::function<SamplePoint(RngStream&)> sample;
    std::function<std::vector<std::pair<cx, cx>>(const SamplePoint&,
                                                 const TruncationPolicy&)>
        pairs;
    std::function<std::vector<double>(const SamplePoint&, const TruncationPolicy&)>
        sequence;
    /// decreasing entries: when false the sequence only has to be finite
    /// (the study reports its behavior rather than asserting decay).
    bool require_decreasing = true;
};

struct Failure {
    std::string params;
    double residual = 0.0;
};

struct VerificationReport {
    std::string id;
    std::string anchor;
    int trials = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    double max_residual = 0.0;
    double median_residual = 0.0;
    std::vector<Failure> failures;
    double wall_time = 0.0;
    bool passed = false;

    bool operator==(const VerificationReport& o) const;
};

struct CheckOptions {
    int trials = 0;           // 0: use the identity default
    std::uint64_t seed = 1;
    double tolerance = 0.0;   // 0: use the identity default
    TruncationPolicy policy;
    int threads = 1;
    cx rhs_perturb{1.0, 0.0};  // negative-control hook; 1 in normal runs
};

/// All registered identities, in stable registration order.
const std::vector<Identity>& registry();

/// Lookup by slug; throws unknown_identity.
const Identity& find_identity(const std::string& id);

/// Stable listing of (id, anchor, default trials, tolerance).
struct IdentityInfo {
    std::string id;
    std::string anchor;
    int default_trials;
    double tolerance;
};
std::vector<IdentityInfo> list_identities();

/// Runs `trials` independently sampled points. Per-trial randomness derives
/// from (seed, id, trial index): reports are identical at any thread count.
/// Retryable pole/conditioning rejections resample from the same per-trial
/// stream, up to 100 times (then sampler_exhausted).
VerificationReport check_identity(const Identity& identity, const CheckOptions& opts);
VerificationReport check_identity(const std::string& id, const CheckOptions& opts);

/// Conditioning guard used by the evaluators: residual error scales like
/// cond * 1e-15, so points with cond beyond tolerance/1e-14 are rejected as
/// near-poles and resampled.
void guard_condition(double cond, double budget);

}  // namespace ellipsum

#endif
