#include "ellipsum/report_json.hpp"

#include <sstream>

#include "json.hpp"

namespace ellipsum {

using ordered_json = nlohmann::ordered_json;

bool SuiteReport::all_passed() const {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

bool SuiteReport::operator==(const SuiteReport& o) const {
    if (suite_seed != o.suite_seed || policy.tail_tol != o.policy.tail_tol ||
        policy.max_factors != o.policy.max_factors || results.size() != o.results.size())
        return false;
    for (std::size_t i = 0; i < results.size(); ++i)
        if (!(results[i] == o.results[i])) return false;
    return true;
}

namespace {

ordered_json result_to_json(const VerificationReport& r, bool with_wall_time) {
    ordered_json j;
    j["id"] = r.id;
    j["anchor"] = r.anchor;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["tolerance"] = r.tolerance;
    j["max_residual"] = r.max_residual;
    j["median_residual"] = r.median_residual;
    j["failures"] = ordered_json::array();
    for (const auto& f : r.failures) {
        ordered_json jf;
        jf["params"] = f.params;
        jf["residual"] = f.residual;
        j["failures"].push_back(jf);
    }
    if (with_wall_time) j["wall_time"] = r.wall_time;
    j["passed"] = r.passed;
    return j;
}

ordered_json suite_to_json(const SuiteReport& report, bool with_wall_time) {
    ordered_json j;
    j["suite_seed"] = report.suite_seed;
    j["policy"] = {{"tail_tol", report.policy.tail_tol},
                   {"max_factors", report.policy.max_factors}};
    j["results"] = ordered_json::array();
    for (const auto& r : report.results)
        j["results"].push_back(result_to_json(r, with_wall_time));
    return j;
}

}  // namespace

std::string to_json(const SuiteReport& report, int indent) {
    return suite_to_json(report, true).dump(indent) + "\n";
}

std::string to_json_without_wall_time(const SuiteReport& report, int indent) {
    return suite_to_json(report, false).dump(indent) + "\n";
}

SuiteReport suite_report_from_json(const std::string& text) {
    const auto j = ordered_json::parse(text);
    SuiteReport report;
    report.suite_seed = j.at("suite_seed").get<std::uint64_t>();
    report.policy.tail_tol = j.at("policy").at("tail_tol").get<double>();
    report.policy.max_factors = j.at("policy").at("max_factors").get<int>();
    for (const auto& jr : j.at("results")) {
        VerificationReport r;
        r.id = jr.at("id").get<std::string>();
        r.anchor = jr.at("anchor").get<std::string>();
        r.trials = jr.at("trials").get<int>();
        r.seed = jr.at("seed").get<std::uint64_t>();
        r.tolerance = jr.at("tolerance").get<double>();
        r.max_residual = jr.at("max_residual").get<double>();
        r.median_residual = jr.at("median_residual").get<double>();
        for (const auto& jf : jr.at("failures"))
            r.failures.push_back({jf.at("params").get<std::string>(),
                                  jf.at("residual").get<double>()});
        if (jr.contains("wall_time")) r.wall_time = jr.at("wall_time").get<double>();
        r.passed = jr.at("passed").get<bool>();
        report.results.push_back(std::move(r));
    }
    return report;
}

std::string to_csv(const SuiteReport& report) {
    std::ostringstream out;
    out << "id,trials,seed,tolerance,max_residual,median_residual,failure_count,"
           "wall_time,passed\n";
    out.precision(17);
    for (const auto& r : report.results) {
        out << r.id << ',' << r.trials << ',' << r.seed << ',' << r.tolerance << ','
            << r.max_residual << ',' << r.median_residual << ',' << r.failures.size()
            << ',' << r.wall_time << ',' << (r.passed ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace ellipsum
