// Command-line front end: list registered identities, run verification
// suites, and evaluate the kernels at explicit points.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ellipsum/cubic_theta.hpp"
#include "ellipsum/report_json.hpp"
#include "ellipsum/series.hpp"

namespace {

using ellipsum::cx;

// Complex literals use the shell-safe form "a", "a+bi" or "a-bi".
cx parse_complex(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw ellipsum::error("empty complex literal");
    bool has_i = false;
    if (s.back() == 'i' || s.back() == 'I') {
        has_i = true;
        s.pop_back();
    }
    if (!has_i) {
        std::size_t pos = 0;
        const double re = std::stod(s, &pos);
        if (pos != s.size()) throw ellipsum::error("bad complex literal: " + text);
        return cx(re, 0.0);
    }
    // Find the sign separating the real and imaginary parts (skip a leading
    // sign and exponent signs).
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
            split = i;
    }
    if (split == std::string::npos) {
        // Pure imaginary: "bi".
        std::size_t pos = 0;
        const double im = std::stod(s, &pos);
        if (pos != s.size()) throw ellipsum::error("bad complex literal: " + text);
        return cx(0.0, im);
    }
    std::size_t pos = 0;
    const double re = std::stod(s.substr(0, split), &pos);
    if (pos != split) throw ellipsum::error("bad complex literal: " + text);
    const std::string imtext = s.substr(split);
    const double im = (imtext == "+") ? 1.0 : (imtext == "-") ? -1.0 : std::stod(imtext);
    return cx(re, im);
}

std::string format_complex(cx v) {
    // Normalize negative zeros so equal values render identically.
    const double re = v.real() == 0.0 ? 0.0 : v.real();
    const double im = v.imag() == 0.0 ? 0.0 : v.imag();
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", re, im);
    return buf;
}

// q and p given directly on the command line: the primitives are taken as
// principal roots. Fine for eval, where only integer powers are consumed.
ellipsum::EllipticParams params_from_qp(cx q, cx p) {
    const cx t = std::pow(q, 0.25);
    const cx s = (p == cx(0.0, 0.0)) ? cx(0.0, 0.0) : std::pow(p, 1.0 / 6.0);
    return ellipsum::EllipticParams(t, s);
}

struct RunConfig {
    bool all = false;
    std::vector<std::string> ids;
    int trials = 0;
    std::uint64_t seed = 1;
    double tolerance = 0.0;
    double tail_tol = 1e-15;
    int max_factors = 10000;
    std::string format = "human";
    std::string output;
    int threads = 1;
};

void merge_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ellipsum::error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("all")) cfg.all = j["all"].get<bool>();
    if (j.contains("ids")) cfg.ids = j["ids"].get<std::vector<std::string>>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tolerance")) cfg.tolerance = j["tolerance"].get<double>();
    if (j.contains("tail_tol")) cfg.tail_tol = j["tail_tol"].get<double>();
    if (j.contains("max_factors")) cfg.max_factors = j["max_factors"].get<int>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
}

int cmd_list() {
    for (const auto& info : ellipsum::list_identities()) {
        std::printf("%-28s trials=%-4d tol=%.1e  %s\n", info.id.c_str(),
                    info.default_trials, info.tolerance, info.anchor.c_str());
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    std::vector<std::string> ids = cfg.ids;
    if (cfg.all) {
        ids.clear();
        for (const auto& info : ellipsum::list_identities()) ids.push_back(info.id);
    }
    if (ids.empty()) {
        std::fprintf(stderr, "verify: nothing selected (use --all or --id)\n");
        return 2;
    }

    ellipsum::CheckOptions opts;
    opts.trials = cfg.trials;
    opts.seed = cfg.seed;
    opts.tolerance = cfg.tolerance;
    opts.policy.tail_tol = cfg.tail_tol;
    opts.policy.max_factors = cfg.max_factors;
    opts.threads = cfg.threads;

    ellipsum::SuiteReport report;
    report.suite_seed = cfg.seed;
    report.policy = opts.policy;
    for (const auto& id : ids)
        report.results.push_back(ellipsum::check_identity(id, opts));

    std::string rendered;
    if (cfg.format == "json") {
        rendered = ellipsum::to_json(report);
    } else if (cfg.format == "csv") {
        rendered = ellipsum::to_csv(report);
    } else {
        std::ostringstream out;
        for (const auto& r : report.results) {
            char line[256];
            std::snprintf(line, sizeof(line),
                          "%-28s %s  trials=%d max=%.3e median=%.3e (%.2fs)\n",
                          r.id.c_str(), r.passed ? "PASS" : "FAIL", r.trials,
                          r.max_residual, r.median_residual, r.wall_time);
            out << line;
        }
        rendered = out.str();
    }
    if (!cfg.output.empty()) {
        std::ofstream out(cfg.output);
        if (!out) {
            std::fprintf(stderr, "verify: cannot write %s\n", cfg.output.c_str());
            return 2;
        }
        out << rendered;
    } else {
        std::fputs(rendered.c_str(), stdout);
    }
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic and cubic theta summation identities: evaluation and "
                 "randomized verification"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "list registered identities");

    RunConfig cfg;
    std::string config_path;
    if (const char* env = std::getenv("ELLIPSUM_CONFIG")) config_path = env;
    auto* verify_cmd = app.add_subcommand("verify", "run identity verification");
    verify_cmd->add_flag("--all", cfg.all, "verify every registered identity");
    verify_cmd->add_option("--id", cfg.ids, "identity slug (repeatable)");
    verify_cmd->add_option("--trials", cfg.trials, "trials per identity (0: defaults)");
    verify_cmd->add_option("--seed", cfg.seed, "suite seed");
    verify_cmd->add_option("--tolerance", cfg.tolerance, "residual tolerance override");
    verify_cmd->add_option("--tail-tol", cfg.tail_tol, "truncation tail tolerance");
    verify_cmd->add_option("--max-factors", cfg.max_factors, "product/shell cap");
    verify_cmd->add_option("--format", cfg.format, "json | csv | human")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    verify_cmd->add_option("--output,-o", cfg.output, "write the report here");
    verify_cmd->add_option("--threads", cfg.threads, "worker threads");
    verify_cmd->add_option("--config", config_path, "JSON config file (flags win)");

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a kernel at a point");
    std::string x_s, p_s = "0", q_s = "0.5", z_s = "1", a_s = "1", b_s, c_s, d_s;
    std::string a1_s, zarg_s = "1";
    std::vector<std::string> upper_s;
    long n_arg = 0;
    double tail_tol = 1e-15;
    int max_factors = 10000;

    auto* th = eval_cmd->add_subcommand("theta", "theta(x;p)");
    th->add_option("--x", x_s)->required();
    th->add_option("--p", p_s);
    auto* ga = eval_cmd->add_subcommand("gamma", "cubic theta gamma(z,a;p)");
    ga->add_option("--z", z_s)->required();
    ga->add_option("--a", a_s)->required();
    ga->add_option("--p", p_s);
    auto* qf = eval_cmd->add_subcommand("qpfact", "(a;q,p)_n");
    qf->add_option("--a", a_s)->required();
    qf->add_option("--n", n_arg)->required();
    qf->add_option("--q", q_s);
    qf->add_option("--p", p_s);
    auto* vw = eval_cmd->add_subcommand("vwp", "very-well-poised sum");
    vw->add_option("--a1", a1_s)->required();
    vw->add_option("--upper", upper_s, "upper parameters, last must be q^-n")->required();
    vw->add_option("--n", n_arg)->required();
    vw->add_option("--q", q_s);
    vw->add_option("--p", p_s);
    vw->add_option("--z", zarg_s);
    auto* ft = eval_cmd->add_subcommand("ftrhs", "closed form of the balanced 10V9");
    ft->add_option("--a", a_s)->required();
    ft->add_option("--b", b_s)->required();
    ft->add_option("--c", c_s)->required();
    ft->add_option("--d", d_s)->required();
    ft->add_option("--n", n_arg)->required();
    ft->add_option("--q", q_s);
    ft->add_option("--p", p_s);
    for (auto* sub : {th, ga, qf, vw, ft}) {
        sub->add_option("--tail-tol", tail_tol);
        sub->add_option("--max-factors", max_factors);
    }
    eval_cmd->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) return cmd_list();
        if (verify_cmd->parsed()) {
            RunConfig merged;
            if (!config_path.empty()) merge_config_file(merged, config_path);
            // Command-line flags override config-file values.
            if (verify_cmd->count("--all")) merged.all = true;
            if (verify_cmd->count("--id")) merged.ids = cfg.ids;
            if (verify_cmd->count("--trials")) merged.trials = cfg.trials;
            if (verify_cmd->count("--seed")) merged.seed = cfg.seed;
            if (verify_cmd->count("--tolerance")) merged.tolerance = cfg.tolerance;
            if (verify_cmd->count("--tail-tol")) merged.tail_tol = cfg.tail_tol;
            if (verify_cmd->count("--max-factors")) merged.max_factors = cfg.max_factors;
            if (verify_cmd->count("--format")) merged.format = cfg.format;
            if (verify_cmd->count("--output")) merged.output = cfg.output;
            if (verify_cmd->count("--threads")) merged.threads = cfg.threads;
            return cmd_verify(merged);
        }
        if (eval_cmd->parsed()) {
            ellipsum::TruncationPolicy policy{tail_tol, max_factors};
            cx result;
            if (th->parsed()) {
                result = ellipsum::theta(parse_complex(x_s), parse_complex(p_s), policy);
            } else if (ga->parsed()) {
                result = ellipsum::gamma_cubic(parse_complex(z_s), parse_complex(a_s),
                                               parse_complex(p_s), policy);
            } else if (qf->parsed()) {
                result = ellipsum::qp_fact_base(parse_complex(a_s), n_arg,
                                                parse_complex(q_s), parse_complex(p_s),
                                                policy);
            } else if (vw->parsed()) {
                ellipsum::VwpSpec spec;
                spec.a1 = parse_complex(a1_s);
                for (const auto& u : upper_s) spec.uppers.push_back(parse_complex(u));
                spec.n = n_arg;
                spec.z_arg = parse_complex(zarg_s);
                result = ellipsum::vwp_sum(
                    spec, params_from_qp(parse_complex(q_s), parse_complex(p_s)), policy);
            } else {
                const auto params = params_from_qp(parse_complex(q_s), parse_complex(p_s));
                const auto q5 = ellipsum::make_balanced_quintuple(
                    parse_complex(a_s), parse_complex(b_s), parse_complex(c_s),
                    parse_complex(d_s), n_arg, params);
                result = ellipsum::ft_rhs(q5, params, policy);
            }
            std::printf("%s\n", format_complex(result).c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
