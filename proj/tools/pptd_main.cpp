// pptd: construct Bell-product ensembles, verify exact dual certificates,
// solve the PPT discrimination SDP numerically, and simulate the
// entanglement-catalysis protocol. All file payloads are JSON with exact
// fractions as strings; every emitted file embeds a run manifest.
//
// Exit codes: 0 success / feasible, 1 negative mathematical result
// (infeasible certificate, non-converged solve, failed identification),
// 2 usage error, 3 I/O error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pptd/catalysis.hpp"
#include "pptd/certificates.hpp"
#include "pptd/json_io.hpp"
#include "pptd/sdp.hpp"
#include "pptd/states.hpp"

#ifndef PPTD_VERSION
#define PPTD_VERSION "0.0.0"
#endif

namespace {

using pptd::Json;
using Clock = std::chrono::steady_clock;

struct GlobalOpts {
    std::string out;
    std::string format = "text";
    bool quiet = false;
    unsigned seed = 0;
};

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

Json make_manifest(const std::string& command, Json parameters,
                   const std::vector<std::string>& inputs, const std::vector<std::string>& outputs,
                   Clock::time_point start) {
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    Json m;
    m["command"] = command;
    m["parameters"] = std::move(parameters);
    m["inputs"] = inputs;
    m["outputs"] = outputs;
    m["tool_version"] = PPTD_VERSION;
    m["timestamp_utc"] = utc_timestamp();
    m["duration_ms"] = ms;
    return m;
}

void emit(const GlobalOpts& g, const Json& doc, const std::string& text_summary) {
    if (!g.out.empty()) pptd::write_json_file(g.out, doc);
    if (g.quiet) return;
    if (g.format == "json")
        std::cout << doc.dump(2) << '\n';
    else
        std::cout << text_summary;
}

int solver_dim_cap_from_env(int fallback) {
    if (const char* env = std::getenv("PPTD_SOLVER_DIM_CAP")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<int>(v);
    }
    return fallback;
}

int cmd_construct(const GlobalOpts& g, int t, int k, const std::vector<int>& indices) {
    const Clock::time_point start = Clock::now();
    const pptd::StateSet set =
        indices.empty() ? pptd::recursive_set(t, k) : pptd::recursive_set(t, indices);

    const bool ortho = pptd::check_orthonormal(set);
    int mes_count = 0;
    for (const pptd::Operator& s : set.states)
        if (pptd::is_maximally_entangled(s)) ++mes_count;

    Json doc;
    Json params = {{"t", t}, {"k", set.k()}};
    if (!indices.empty()) params["indices"] = indices;
    doc["manifest"] = make_manifest("construct", params, {}, {g.out}, start);
    Json payload = pptd::state_set_to_json(set);
    doc.update(payload);
    doc["checks"] = {{"orthonormal", ortho}, {"maximally_entangled", mes_count == set.k()}};

    std::string text = "d = " + std::to_string(set.d) + ", k = " + std::to_string(set.k()) +
                       ", t = " + std::to_string(t) + "\n";
    text += "orthonormal: " + std::string(ortho ? "yes" : "no") + "\n";
    text += "maximally entangled: " + std::to_string(mes_count) + "/" + std::to_string(set.k()) +
            "\n";
    emit(g, doc, text);
    return (ortho && mes_count == set.k()) ? 0 : 1;
}

int cmd_certify(const GlobalOpts& g, int t, int k, const std::string& states_path,
                const std::string& cert_path, const std::string& emit_cert) {
    const Clock::time_point start = Clock::now();
    pptd::StateSet set = states_path.empty()
                             ? pptd::recursive_set(t, k)
                             : pptd::state_set_from_json(pptd::read_json_file(states_path));
    pptd::DualCertificate cert =
        cert_path.empty() ? pptd::recursive_certificate(t, set.k())
                          : pptd::certificate_from_json(pptd::read_json_file(cert_path));

    if (!emit_cert.empty()) {
        Json cdoc;
        cdoc["manifest"] = make_manifest(
            "certify", {{"t", cert.t}, {"k", cert.k}, {"emit_cert", emit_cert}}, {}, {emit_cert},
            start);
        cdoc.update(pptd::certificate_to_json(cert));
        pptd::write_json_file(emit_cert, cdoc);
    }

    const pptd::VerificationReport report = pptd::verify(set, cert);

    Json params = {{"t", t}, {"k", set.k()}};
    if (!states_path.empty()) params["states"] = states_path;
    if (!cert_path.empty()) params["cert"] = cert_path;
    std::vector<std::string> inputs;
    if (!states_path.empty()) inputs.push_back(states_path);
    if (!cert_path.empty()) inputs.push_back(cert_path);

    Json doc;
    doc["manifest"] = make_manifest("certify", params, inputs, {g.out}, start);
    doc.update(pptd::verification_report_to_json(report, set.k()));

    std::string text;
    if (report.feasible) {
        text = "feasible, bound = " + pptd::rat_to_string(report.objective) + " = " +
               std::to_string(report.objective.get_d()) + "\n";
    } else {
        text = "infeasible: " + std::to_string(report.failures.size()) +
               " constraint check(s) violated\n";
        for (const auto& f : report.failures)
            text += "  j = " + std::to_string(f.j + 1) + ": " + f.constraint + "\n";
    }
    emit(g, doc, text);
    return report.feasible ? 0 : 1;
}

int cmd_solve(const GlobalOpts& g, const std::string& states_path, pptd::SolverConfig cfg,
              double perturb, bool emit_measurement) {
    const Clock::time_point start = Clock::now();
    const pptd::StateSet set = pptd::state_set_from_json(pptd::read_json_file(states_path));
    const pptd::DiscriminationInstance inst = pptd::DiscriminationInstance::from_state_set(set);

    cfg.dim_cap = solver_dim_cap_from_env(cfg.dim_cap);
    cfg.perturb = perturb;
    cfg.seed = g.seed;
    const pptd::SolverResult result = pptd::solve(inst, cfg);

    Json params = {{"states", states_path},
                   {"eps_primal", cfg.eps_primal},
                   {"eps_dual", cfg.eps_dual},
                   {"eps_gap", cfg.eps_gap},
                   {"max_iter", cfg.max_iter},
                   {"alpha", cfg.alpha},
                   {"step", cfg.step},
                   {"dim_cap", cfg.dim_cap},
                   {"seed", g.seed},
                   {"perturb", perturb}};
    Json doc;
    doc["manifest"] = make_manifest("solve", params, {states_path}, {g.out}, start);
    doc.update(pptd::solver_result_to_json(result, emit_measurement));

    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "value = %.9f\niterations = %ld\nresiduals: completeness = %.2e, cone = %.2e, "
                  "gap = %.2e\nstatus = %s\n",
                  result.value, result.iterations, result.residuals.completeness,
                  result.residuals.cone, result.residuals.gap, to_string(result.status));
    emit(g, doc, buf);

    if (result.status == pptd::SolveStatus::Converged) return 0;
    if (result.status == pptd::SolveStatus::InfeasibleInput) {
        if (!g.quiet) std::cerr << "invalid instance: " << result.message << '\n';
        return 2;
    }
    return 1;
}

int cmd_catalysis(const GlobalOpts& g, int t, int j, bool all) {
    const Clock::time_point start = Clock::now();
    std::vector<int> js;
    if (all)
        for (int i = 1; i <= (1 << t); ++i) js.push_back(i);
    else
        js.push_back(j);

    Json runs = Json::array();
    int correct = 0;
    pptd::Rat min_fidelity(1);
    std::string text;
    for (int jj : js) {
        const pptd::SimulationResult res = pptd::simulate_with_transcript(t, jj);
        runs.push_back(pptd::simulation_result_to_json(res, t, jj));
        if (res.outcome.correct) ++correct;
        if (res.outcome.catalyst_fidelity < min_fidelity)
            min_fidelity = res.outcome.catalyst_fidelity;
        if (!all)
            text += "t = " + std::to_string(t) + ", j = " + std::to_string(jj) + ": identified " +
                    std::to_string(res.outcome.identified_index) +
                    (res.outcome.correct ? ", correct" : ", WRONG") + ", catalyst fidelity = " +
                    pptd::rat_to_string(res.outcome.catalyst_fidelity) + ", rounds = " +
                    std::to_string(res.outcome.rounds) + ", branches = " +
                    std::to_string(res.outcome.branch_count) + "\n";
    }
    if (all)
        text = std::to_string(correct) + "/" + std::to_string(js.size()) +
               " correct, catalyst fidelity = " + pptd::rat_to_string(min_fidelity) +
               " (min over all runs)\n";

    Json params = {{"t", t}};
    if (all)
        params["all"] = true;
    else
        params["j"] = j;
    Json doc;
    doc["manifest"] = make_manifest("catalysis", params, {}, {g.out}, start);
    doc["runs"] = std::move(runs);
    doc["summary"] = {{"correct", correct},
                      {"total", js.size()},
                      {"min_catalyst_fidelity", pptd::rat_to_string(min_fidelity)}};
    emit(g, doc, text);
    return correct == static_cast<int>(js.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PPT state-discrimination toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--out", g.out, "Write the result document to this path");
    app.add_option("--format", g.format, "Stdout format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--quiet", g.quiet, "Suppress stdout");
    app.add_option("--seed", g.seed, "Seed for optional solver perturbation experiments");

    int t = 2, k = -1, j = 1;
    std::vector<int> indices;
    std::string states_path, cert_path, emit_cert;
    bool all = false, emit_measurement = false;
    pptd::SolverConfig cfg;
    double eps = 0.0, perturb = 0.0;

    app.fallthrough();  // global flags may appear after the subcommand

    CLI::App* construct = app.add_subcommand("construct", "Construct a Bell-product ensemble");
    construct->add_option("--t", t, "Recursion level (d = 2^t)")->required();
    construct->add_option("--k", k, "Ensemble size (defaults to 2^t)");
    construct->add_option("--indices", indices, "Explicit 1-based state indices")->delimiter(',');

    CLI::App* certify = app.add_subcommand("certify", "Verify a dual certificate exactly");
    certify->add_option("--t", t, "Recursion level");
    certify->add_option("--k", k, "Ensemble size (defaults to 2^t)");
    certify->add_option("--states", states_path, "StateSet JSON file");
    certify->add_option("--cert", cert_path, "Certificate JSON file");
    certify->add_option("--emit-cert", emit_cert, "Also write the certificate to this path");

    CLI::App* solve = app.add_subcommand("solve", "Solve the PPT discrimination SDP numerically");
    solve->add_option("--states", states_path, "StateSet JSON file")->required();
    solve->add_option("--eps", eps, "Set all three tolerances at once");
    solve->add_option("--eps-primal", cfg.eps_primal, "Completeness residual tolerance");
    solve->add_option("--eps-dual", cfg.eps_dual, "Cone residual tolerance");
    solve->add_option("--eps-gap", cfg.eps_gap, "Fixed-point/value-drift tolerance");
    solve->add_option("--max-iter", cfg.max_iter, "Iteration cap");
    solve->add_option("--alpha", cfg.alpha, "Over-relaxation parameter in (0, 2)");
    solve->add_option("--step", cfg.step, "Objective ascent step (0 = automatic)");
    solve->add_option("--dim-cap", cfg.dim_cap, "Largest admissible local dimension");
    solve->add_option("--perturb", perturb, "Seeded start perturbation magnitude (experiment)");
    solve->add_flag("--emit-measurement", emit_measurement,
                    "Include measurement operators in the result document");

    CLI::App* catalysis = app.add_subcommand("catalysis", "Simulate the catalysis protocol");
    catalysis->add_option("--t", t, "Recursion level")->required();
    catalysis->add_option("--j", j, "Prepared state index (1-based)");
    catalysis->add_flag("--all", all, "Run every index and summarize");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (construct->parsed()) {
            if (g.out.empty()) {
                std::cerr << "construct: --out is required\n";
                return 2;
            }
            return cmd_construct(g, t, k < 0 ? (t >= 2 && t < 30 ? (1 << t) : 0) : k, indices);
        }
        if (certify->parsed()) {
            if (states_path.empty() != cert_path.empty()) {
                std::cerr << "certify: --states and --cert must be given together\n";
                return 2;
            }
            return cmd_certify(g, t, k < 0 ? (t >= 2 && t < 30 ? (1 << t) : 0) : k, states_path,
                               cert_path, emit_cert);
        }
        if (solve->parsed()) {
            if (eps > 0.0) cfg.eps_primal = cfg.eps_dual = cfg.eps_gap = eps;
            return cmd_solve(g, states_path, cfg, perturb, emit_measurement);
        }
        if (catalysis->parsed()) return cmd_catalysis(g, t, j, all);
    } catch (const pptd::DimCapError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
