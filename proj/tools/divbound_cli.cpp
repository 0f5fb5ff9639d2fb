// divbound: command-line front end for the bound checks.
//
// Exit codes: 0 all checks pass, 1 a claimed bound or reproduced value
// failed, 2 usage or input error.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "divbound/error.hpp"
#include "divbound/io.hpp"
#include "divbound/sweep.hpp"
#include "divbound/verify.hpp"

namespace {

using divbound::io::Document;
using divbound::io::number;

constexpr int kExitPass = 0;
constexpr int kExitClaimFailed = 1;
constexpr int kExitUsage = 2;

struct Config {
    std::string format = "pretty";
    int nodes = divbound::numerics::default_node_count();
    double abs_tol = divbound::numerics::default_tolerances().abs;
    double rel_tol = divbound::numerics::default_tolerances().rel;
    std::uint64_t seed = 0;
};

Document header(const std::string& command, const Config& cfg) {
    Document d = Document::object();
    d["command"] = command;
    d["seed"] = cfg.seed;
    d["nodes"] = cfg.nodes;
    d["abs_tol"] = number(cfg.abs_tol);
    d["rel_tol"] = number(cfg.rel_tol);
    return d;
}

void emit(const Document& d, const Config& cfg) {
    std::cout << divbound::io::render(d, divbound::io::parse_format(cfg.format));
}

int cmd_constants(const Config& cfg) {
    namespace v = divbound::verify;
    const double b0 = v::compute_beta0();
    const double a0 = v::compute_alpha0();
    const double lm = v::beta0_local_max(b0);
    Document d = header("constants", cfg);
    d["beta0"] = number(b0);
    d["alpha0"] = number(a0);
    d["local_max"] = number(lm);
    d["local_max_below_one"] = lm < 1.0;
    d["beta0_residual"] = number(std::abs(b0 * b0 * std::exp(b0 * b0) - 1.0));
    d["alpha0_residual"] = number(std::abs(v::beta0_of_alpha(a0) - b0));
    emit(d, cfg);
    return lm < 1.0 ? kExitPass : kExitClaimFailed;
}

int cmd_table(const Config& cfg) {
    namespace v = divbound::verify;
    Document d = header("table", cfg);
    Document rows = Document::array();
    bool all = true;
    for (int twice = -1; twice <= 12; ++twice) {
        const double alpha = 0.5 * twice;
        v::TableRow r;
        try {
            r = v::check_condition_integral(alpha, cfg.nodes);
        } catch (const divbound::Error& e) {
            std::cerr << "divbound: table row alpha=" << alpha << ": " << e.what() << '\n';
            return kExitClaimFailed;
        }
        Document row = Document::object();
        row["alpha"] = number(r.alpha);
        row["beta0_alpha"] = number(r.beta0_of_alpha);
        row["integral"] = number(r.integral);
        row["passes"] = r.passes;
        row["error_estimate"] = number(r.error_estimate);
        row["adaptive"] = r.adaptive;
        rows.push_back(row);
        all = all && r.passes;
    }
    d["all_pass"] = all;
    d["rows"] = rows;
    emit(d, cfg);
    return all ? kExitPass : kExitClaimFailed;
}

int cmd_counterexample(const Config& cfg) {
    const auto c = divbound::verify::reproduce_counterexample(cfg.nodes, true);
    Document d = header("counterexample", cfg);
    d["target_mean"] = number(-3.0);
    d["beta"] = number(c.beta);
    d["divergence"] = number(c.divergence);
    d["bound"] = number(c.conjectured_bound);
    d["margin"] = number(c.margin);
    d["violated"] = c.violated;
    d["beta_delta"] = number(c.beta_delta);
    d["divergence_delta"] = number(c.divergence_delta);
    emit(d, cfg);
    return c.violated ? kExitPass : kExitClaimFailed;
}

int cmd_audit(const Config& cfg, const std::string& dist, const std::string& target_spec, bool renormalize) {
    const auto target = divbound::io::parse_target(target_spec);
    const auto parsed = divbound::io::parse_distribution_file(dist, renormalize);
    const auto r = divbound::verify::audit_bound(parsed.spec, target);
    Document d = header("audit", cfg);
    d["distribution"] = dist;
    d["raw_total"] = number(parsed.raw_total);
    d["renormalized"] = parsed.renormalized;
    d["target"] = r.target;
    d["divergence"] = number(r.divergence);
    d["moment"] = number(r.moment_value);
    d["bound"] = number(r.bound);
    d["margin"] = number(r.margin);
    d["satisfied"] = r.satisfied;
    d["applicable"] = r.applicable;
    d["proven"] = r.proven;
    d["reason"] = r.reason;
    Document diag = Document::object();
    for (const auto& [k, val] : r.diagnostics) diag[k] = number(val);
    d["diagnostics"] = diag;
    emit(d, cfg);
    return r.proven && !r.satisfied ? kExitClaimFailed : kExitPass;
}

int cmd_sweep(const Config& cfg, const std::string& suite, int cases) {
    const auto res = divbound::sweep::run(suite, cfg.seed, cases, cfg.nodes);
    Document d = header("sweep", cfg);
    d["suite"] = res.suite;
    d["cases"] = res.cases.size();
    d["failures"] = res.failures();
    Document rows = Document::array();
    for (const auto& c : res.cases) {
        Document row = Document::object();
        row["index"] = c.index;
        row["label"] = c.label;
        Document inputs = Document::object();
        for (const auto& [k, val] : c.inputs) inputs[k] = number(val);
        row["inputs"] = inputs;
        row["lhs"] = number(c.lhs);
        row["rhs"] = number(c.rhs);
        row["margin"] = number(c.margin);
        row["tolerance"] = number(c.tolerance);
        row["pass"] = c.pass;
        row["error"] = c.error;
        rows.push_back(row);
    }
    d["rows"] = rows;
    emit(d, cfg);
    for (const auto& c : res.cases) {
        if (c.pass) continue;
        std::cerr << "divbound: FAIL " << res.suite << " seed=" << res.seed << " case=" << c.index << ' ' << c.label;
        for (const auto& [k, val] : c.inputs) std::cerr << ' ' << k << '=' << divbound::io::round12(val);
        if (!c.error.empty()) std::cerr << " error: " << c.error;
        std::cerr << '\n';
    }
    return res.failures() == 0 ? kExitPass : kExitClaimFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks of quadratic lower bounds on information divergence"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}))
        ->capture_default_str();
    app.add_option("--nodes", cfg.nodes, "Gauss rule size (DIVBOUND_NODES sets the default)")
        ->check(CLI::Range(divbound::numerics::kMinNodes, divbound::numerics::kMaxNodes))
        ->capture_default_str();
    app.add_option("--abs-tol", cfg.abs_tol, "Absolute quadrature tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--rel-tol", cfg.rel_tol, "Relative quadrature tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for randomized sweeps")->capture_default_str();

    auto* constants = app.add_subcommand("constants", "beta0, alpha0 and the local-maximum check");
    auto* table = app.add_subcommand("table", "Condition integrals for alpha = -1/2, 0, ..., 6");
    auto* counter = app.add_subcommand("counterexample", "Degree-3 projection that violates the bound");

    auto* audit = app.add_subcommand("audit", "Audit a distribution file against a target bound");
    std::string dist;
    std::string target;
    bool renormalize = false;
    audit->add_option("--dist", dist, "Distribution CSV (kind,pmf|grid then x,p rows)")->required();
    audit->add_option("--target", target, "Target, e.g. poisson:1 or gamma:-0.5:laguerre:2")->required();
    audit->add_flag("--renormalize", renormalize, "Rescale a file whose mass is off by more than 1e-8");

    auto* sweep = app.add_subcommand("sweep", "Run a sweep suite");
    std::string suite;
    int cases = 0;
    sweep->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(divbound::sweep::suite_names()));
    sweep->add_option("--cases", cases, "Case count for randomized suites (0 = default)")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        divbound::numerics::set_default_tolerances({cfg.abs_tol, cfg.rel_tol});
        if (*constants) return cmd_constants(cfg);
        if (*table) return cmd_table(cfg);
        if (*counter) return cmd_counterexample(cfg);
        if (*audit) return cmd_audit(cfg, dist, target, renormalize);
        if (*sweep) return cmd_sweep(cfg, suite, cases);
    } catch (const divbound::AccuracyError& e) {
        std::cerr << "divbound: " << e.what() << '\n';
        return kExitClaimFailed;
    } catch (const divbound::Error& e) {
        std::cerr << "divbound: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
