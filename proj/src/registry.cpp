#include "ellipsum/registry.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

namespace ellipsum {

cx SamplePoint::value(const std::string& name) const {
    for (const auto& [k, v] : values)
        if (k == name) return v;
    throw error("SamplePoint: no complex parameter named " + name);
}

long SamplePoint::degree(const std::string& name) const {
    for (const auto& [k, v] : degrees)
        if (k == name) return v;
    throw error("SamplePoint: no integer parameter named " + name);
}

namespace {
std::string fmt_cx(cx v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", v.real(), v.imag());
    return buf;
}
}  // namespace

std::string SamplePoint::describe() const {
    std::string out = "t=" + fmt_cx(params.t) + " s=" + fmt_cx(params.s);
    for (const auto& [k, v] : values) out += " " + k + "=" + fmt_cx(v);
    for (const auto& [k, v] : degrees) out += " " + k + "=" + std::to_string(v);
    return out;
}

bool VerificationReport::operator==(const VerificationReport& o) const {
    // wall_time is excluded: it is the one nondeterministic field.
    if (id != o.id || anchor != o.anchor || trials != o.trials || seed != o.seed ||
        tolerance != o.tolerance || max_residual != o.max_residual ||
        median_residual != o.median_residual || passed != o.passed ||
        failures.size() != o.failures.size())
        return false;
    for (std::size_t i = 0; i < failures.size(); ++i)
        if (failures[i].params != o.failures[i].params ||
            failures[i].residual != o.failures[i].residual)
            return false;
    return true;
}

void guard_condition(double cond, double budget) {
    if (!(cond < budget)) throw near_pole("conditioning beyond budget");
}

const Identity& find_identity(const std::string& id) {
    for (const auto& entry : registry())
        if (entry.id == id) return entry;
    throw unknown_identity("unknown identity: " + id);
}

std::vector<IdentityInfo> list_identities() {
    std::vector<IdentityInfo> out;
    for (const auto& entry : registry())
        out.push_back({entry.id, entry.anchor, entry.default_trials, entry.tolerance});
    return out;
}

namespace {

double run_trial(const Identity& identity, std::uint64_t seed, std::uint64_t index,
                 const CheckOptions& opts, std::string* desc) {
    RngStream rng = RngStream::for_trial(seed, identity.id, index);
    for (int attempt = 0; attempt < 100; ++attempt) {
        SamplePoint pt;
        try {
            pt = identity.sample(rng);
            double residual = 0.0;
            if (identity.kind == IdentityKind::equality) {
                for (const auto& [lhs, rhs] : identity.pairs(pt, opts.policy)) {
                    const cx r = rhs * opts.rhs_perturb;
                    if (!is_finite(lhs) || !is_finite(r)) throw near_pole("non-finite");
                    residual = std::max(residual, rel_residual(lhs, r));
                }
            } else {
                const auto seq = identity.sequence(pt, opts.policy);
                bool ok = seq.size() >= 2;
                for (double r : seq)
                    if (!std::isfinite(r)) ok = false;
                if (identity.require_decreasing)
                    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
                        if (!(seq[i + 1] < seq[i])) ok = false;
                residual = ok ? 0.0 : 1.0;
                if (desc) {
                    *desc = pt.describe() + " residuals=[";
                    for (std::size_t i = 0; i < seq.size(); ++i)
                        *desc += (i ? "," : "") + std::to_string(seq[i]);
                    *desc += "]";
                }
                return residual;
            }
            if (desc) *desc = pt.describe();
            return residual;
        } catch (const near_pole&) {
        } catch (const pole_hit&) {
        } catch (const degree_overflow&) {
            // An ill-conditioned draw can fail the reconstruction probe even
            // for a genuine member; resample like any near-pole point.
        }
    }
    throw sampler_exhausted("identity " + identity.id +
                            ": pole-avoidance retries exhausted at trial " +
                            std::to_string(index));
}

}  // namespace

VerificationReport check_identity(const Identity& identity, const CheckOptions& opts) {
    const int trials = opts.trials > 0 ? opts.trials : identity.default_trials;
    const double tolerance = opts.tolerance > 0.0 ? opts.tolerance : identity.tolerance;
    if (trials < 1) throw error("check_identity: trials must be >= 1");

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> residuals(static_cast<std::size_t>(trials));
    std::vector<std::string> descs(static_cast<std::size_t>(trials));

    const int threads = std::max(1, opts.threads);
    if (threads == 1) {
        for (int i = 0; i < trials; ++i)
            residuals[static_cast<std::size_t>(i)] =
                run_trial(identity, opts.seed, static_cast<std::uint64_t>(i), opts,
                          &descs[static_cast<std::size_t>(i)]);
    } else {
        std::atomic<int> next{0};
        std::atomic<bool> failed{false};
        std::string first_error;
        std::mutex err_mutex;
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    const int i = next.fetch_add(1);
                    if (i >= trials || failed.load()) return;
                    try {
                        residuals[static_cast<std::size_t>(i)] =
                            run_trial(identity, opts.seed, static_cast<std::uint64_t>(i),
                                      opts, &descs[static_cast<std::size_t>(i)]);
                    } catch (const std::exception& e) {
                        std::lock_guard<std::mutex> lock(err_mutex);
                        if (!failed.exchange(true)) first_error = e.what();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failed.load()) throw error(first_error);
    }

    VerificationReport report;
    report.id = identity.id;
    report.anchor = identity.anchor;
    report.trials = trials;
    report.seed = opts.seed;
    report.tolerance = tolerance;
    for (int i = 0; i < trials; ++i) {
        const double r = residuals[static_cast<std::size_t>(i)];
        report.max_residual = std::max(report.max_residual, r);
        if (r > tolerance)
            report.failures.push_back({descs[static_cast<std::size_t>(i)], r});
    }
    std::vector<double> sorted = residuals;
    std::sort(sorted.begin(), sorted.end());
    report.median_residual = sorted[sorted.size() / 2];
    report.passed = report.failures.empty();
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

VerificationReport check_identity(const std::string& id, const CheckOptions& opts) {
    return check_identity(find_identity(id), opts);
}

}  // namespace ellipsum
