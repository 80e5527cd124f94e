// pdmeans command-line front end: means, equation solving, solution-set
// exploration, the 2x2 non-uniqueness reproduction, and the property
// suites. Reports are JSON documents with numbers at 17 significant
// digits; identical inputs produce byte-identical reports apart from the
// timing block.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdmeans/counterexample.hpp"
#include "pdmeans/harness.hpp"
#include "pdmeans/means_multi.hpp"
#include "pdmeans/means_two.hpp"
#include "pdmeans/metrics.hpp"
#include "pdmeans/parallel.hpp"
#include "pdmeans/problem_io.hpp"
#include "pdmeans/spectral_equation.hpp"

namespace {

using nlohmann::ordered_json;
using namespace pdmeans;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitNotCertified = 3;

struct CommonOpts {
    double tol = 1e-12;
    int max_iter = 500;
    int threads = hardware_threads();
    std::string input;
    std::string out;
};

SolverOptions solver_options(const CommonOpts& c) {
    SolverOptions o;
    o.tol = c.tol;
    o.max_iter = c.max_iter;
    return o;
}

void add_common(CLI::App* cmd, CommonOpts& c, bool needs_input) {
    cmd->add_option("--tol", c.tol, "solver residual tolerance")->capture_default_str();
    cmd->add_option("--max-iter", c.max_iter, "iteration budget")->capture_default_str();
    cmd->add_option("--threads", c.threads, "worker cap for parallel parts")
        ->capture_default_str();
    auto* in = cmd->add_option("--input", c.input, "problem file (JSON)");
    if (needs_input) in->required();
    cmd->add_option("--out", c.out, "report destination (atomic write); stdout if absent");
}

class Report {
  public:
    Report(const std::string& command, const CommonOpts& opts) {
        doc_["schema"] = "pdmeans-report/1";
        doc_["command"] = command;
        doc_["input_digest"] = "none";
        ordered_json o;
        o["tol"] = format_sig17(opts.tol);
        o["max_iter"] = opts.max_iter;
        o["threads"] = opts.threads;
        doc_["options"] = std::move(o);
        start_ = std::chrono::steady_clock::now();
    }

    void digest_of(const std::string& text) { doc_["input_digest"] = digest_hex(text); }
    void statement(const std::string& s) { doc_["statement"] = s; }
    ordered_json& results() { return doc_["results"]; }

    static ordered_json matrix_entries(const SymMatrix& a) {
        ordered_json entries = ordered_json::array();
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) entries.push_back(format_sig17(a(i, j)));
        return entries;
    }

    static ordered_json outcome_json(const SolveOutcome& s) {
        ordered_json j;
        j["converged"] = s.converged;
        j["iterations"] = s.iterations;
        j["residual"] = format_sig17(s.residual);
        j["solution"] = matrix_entries(s.solution.sym());
        return j;
    }

    static ordered_json suite_json(const SuiteReport& rep) {
        ordered_json j;
        j["suite"] = rep.suite;
        j["statement"] = rep.statement;
        j["trials"] = rep.trials;
        j["passes"] = rep.passes;
        j["worst_margin"] = format_sig17(rep.worst_margin);
        ordered_json fails = ordered_json::array();
        for (const auto& f : rep.failures) {
            ordered_json jf;
            jf["trial"] = f.trial;
            jf["seed"] = f.seed;
            jf["n"] = f.n;
            jf["m"] = f.m;
            jf["margin"] = format_sig17(f.margin);
            jf["what"] = f.what;
            fails.push_back(std::move(jf));
        }
        j["failures"] = std::move(fails);
        return j;
    }

    int emit(const std::string& out_path, int code) {
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start_)
                              .count();
        doc_["exit_code"] = code;
        doc_["timing_ms"] = ordered_json{{"total", format_sig17(ms)}};
        const std::string text = doc_.dump(2) + "\n";
        if (out_path.empty())
            std::cout << text;
        else
            write_text_atomic(out_path, text);
        return code;
    }

  private:
    ordered_json doc_;
    std::chrono::steady_clock::time_point start_;
};

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

MeanProblem load_problem(const CommonOpts& c, Report& rep,
                         std::vector<std::string>* warnings = nullptr) {
    const std::string text = read_text(c.input);
    rep.digest_of(text);
    ProblemFile pf = parse_problem_text(text);
    for (const auto& w : pf.warnings) std::cerr << "warning: " << w << "\n";
    if (warnings) *warnings = pf.warnings;
    return pf.problem;
}

int run_mean(const std::string& cmdline, const CommonOpts& c, const std::string& kind,
             double t, const std::string& gname) {
    Report rep(cmdline, c);
    const MeanProblem p = load_problem(c, rep);
    const SolverOptions opts = solver_options(c);

    if (kind == "arithmetic" || kind == "harmonic" || kind == "log-euclidean") {
        const ElementaryMean k = kind == "arithmetic"    ? ElementaryMean::arithmetic
                                 : kind == "harmonic"    ? ElementaryMean::harmonic
                                                         : ElementaryMean::log_euclidean;
        rep.statement("elementary weighted mean: " + kind);
        rep.results()["solution"] = Report::matrix_entries(elementary_mean(k, p).sym());
        return rep.emit(c.out, kExitOk);
    }

    SolveOutcome out;
    if (kind == "karcher") {
        rep.statement("solves sum_i w_i log(X^{-1/2} A_i X^{-1/2}) = 0");
        out = karcher_mean(p, opts);
    } else if (kind == "power") {
        rep.statement("solves X = sum_i w_i (X #_t A_i)");
        out = power_mean(p, t, opts);
    } else if (kind == "wasserstein") {
        rep.statement("solves sum_i w_i (A_i # X^{-1}) = I");
        out = wasserstein_mean(p, opts);
        ordered_json tr = ordered_json::array();
        for (double v : out.trace_history) tr.push_back(format_sig17(v));
        rep.results()["trace_history"] = std::move(tr);
    } else if (kind == "generalized") {
        const RepFunction g = RepFunction::from_g_name(gname, t);
        rep.statement("solves sum_i w_i g(X^{-1/2} A_i X^{-1/2}) = 0, g = " + g.name);
        out = generalized_karcher(p, g, opts);
    } else {
        throw CLI::ValidationError("--kind", "unknown mean kind: " + kind);
    }
    rep.results().update(Report::outcome_json(out), true);
    return rep.emit(c.out, out.converged ? kExitOk : kExitNoConvergence);
}

int run_mean2(const std::string& cmdline, const CommonOpts& c, const std::string& kind,
              double t, const std::string& fname) {
    Report rep(cmdline, c);
    const MeanProblem p = load_problem(c, rep);
    if (p.size() != 2) throw Error("mean2 requires a problem with exactly two matrices");
    const SPDMatrix& a = p.matrix(0);
    const SPDMatrix& b = p.matrix(1);

    SPDMatrix result = SPDMatrix::identity(p.dim());
    if (kind == "geo") {
        rep.statement("metric geometric mean A #_t B");
        result = geo_mean_t(a, b, t);
    } else if (kind == "spectral") {
        rep.statement("spectral geometric mean (A^{-1} # B)^t A (A^{-1} # B)^t");
        result = spectral_mean_t(a, b, t);
    } else if (kind == "wasserstein") {
        rep.statement("two-variable Wasserstein mean");
        result = wasserstein2_t(a, b, t);
    } else if (kind == "alt") {
        const RepFunction f = RepFunction::from_f_name(fname, t);
        rep.statement("alternative mean f(A^{-1} # B) A f(A^{-1} # B), f = " + f.name);
        result = alt_mean(a, b, f);
        rep.results()["equation_residual"] =
            format_sig17(verify_alt_equation(a, b, f, result));
    } else {
        throw CLI::ValidationError("--kind", "unknown two-variable mean: " + kind);
    }
    rep.results()["solution"] = Report::matrix_entries(result.sym());
    return rep.emit(c.out, kExitOk);
}

int run_solve(const std::string& cmdline, const CommonOpts& c, const std::string& gname,
              double t, const std::string& x0_path, int starts, std::uint64_t seed) {
    Report rep(cmdline, c);
    const MeanProblem p = load_problem(c, rep);
    const RepFunction g = RepFunction::from_g_name(gname, t);
    const SolverOptions opts = solver_options(c);
    rep.statement("solves sum_i w_i g(A_i # X^{-1}) = 0, g = " + g.name);

    if (starts > 0) {
        const SolutionSet set = explore_solutions(p, g, starts, seed, opts, c.threads);
        ordered_json clusters = ordered_json::array();
        const SolutionCluster* best = nullptr;
        for (const auto& cl : set.clusters) {
            ordered_json jc;
            jc["representative"] = Report::matrix_entries(cl.representative.sym());
            jc["members"] = cl.members;
            jc["max_spread"] = format_sig17(cl.max_spread);
            jc["residual"] = format_sig17(cl.residual);
            clusters.push_back(std::move(jc));
            if (!best || cl.residual < best->residual) best = &cl;
        }
        rep.results()["starts"] = set.starts;
        rep.results()["failures"] = set.failures;
        rep.results()["clusters"] = std::move(clusters);
        if (best) {
            rep.results()["converged"] = true;
            rep.results()["residual"] = format_sig17(best->residual);
            rep.results()["solution"] = Report::matrix_entries(best->representative.sym());
        }
        return rep.emit(c.out, best ? kExitOk : kExitNoConvergence);
    }

    SolveOutcome out;
    try {
        if (!x0_path.empty()) {
            const ProblemFile x0f = parse_problem(x0_path);
            out = solve_equation(p, g, x0f.problem.matrix(0), opts);
        } else {
            out = solve_equation(p, g, opts);
        }
    } catch (const DivergenceError& e) {
        rep.results()["error"] = e.what();
        return rep.emit(c.out, kExitNoConvergence);
    }
    rep.results().update(Report::outcome_json(out), true);
    return rep.emit(c.out, out.converged ? kExitOk : kExitNoConvergence);
}

int run_explore(const std::string& cmdline, const CommonOpts& c, const std::string& gname,
                double t, int starts, std::uint64_t seed) {
    Report rep(cmdline, c);
    const MeanProblem p = load_problem(c, rep);
    const RepFunction g = RepFunction::from_g_name(gname, t);
    rep.statement("multistart exploration of the solution set of sum_i w_i g(A_i # X^{-1}) = 0");
    const SolutionSet set = explore_solutions(p, g, starts, seed, solver_options(c), c.threads);
    ordered_json clusters = ordered_json::array();
    for (const auto& cl : set.clusters) {
        ordered_json jc;
        jc["representative"] = Report::matrix_entries(cl.representative.sym());
        jc["members"] = cl.members;
        jc["max_spread"] = format_sig17(cl.max_spread);
        jc["residual"] = format_sig17(cl.residual);
        jc["tight"] = cl.tight;
        clusters.push_back(std::move(jc));
    }
    rep.results()["starts"] = set.starts;
    rep.results()["failures"] = set.failures;
    rep.results()["cluster_count"] = set.clusters.size();
    rep.results()["clusters"] = std::move(clusters);
    return rep.emit(c.out, kExitOk);
}

int run_counterexample(const std::string& cmdline, const CommonOpts& c,
                       const std::string& action, const std::vector<double>& rect_vals,
                       int samples, double margin) {
    const Counterexample ce;

    if (action == "build") {
        // emit the instance as a reusable problem file
        if (!c.out.empty()) {
            write_problem(c.out, ce.problem(), {"A1", "A2", "A3"});
            return kExitOk;
        }
        std::cout << problem_to_json(ce.problem(), {"A1", "A2", "A3"});
        return kExitOk;
    }

    Report rep(cmdline, c);
    const Rect2 rect = rect_vals.size() == 4
                           ? Rect2(rect_vals[0], rect_vals[1], rect_vals[2], rect_vals[3])
                           : Counterexample::second_solution_rect();

    if (action == "certify") {
        rep.statement("edge-sampled sign certification of the residual field on a rectangle");
        const MirandaReport mr = ce.certify(rect, samples, margin, c.threads);
        ordered_json j;
        j["certified"] = mr.certified;
        j["left_min_f1"] = format_sig17(mr.left_min_f1);
        j["right_max_f1"] = format_sig17(mr.right_max_f1);
        j["bottom_min_f2"] = format_sig17(mr.bottom_min_f2);
        j["top_max_f2"] = format_sig17(mr.top_max_f2);
        j["samples_per_edge"] = mr.samples_per_edge;
        j["margin"] = format_sig17(mr.margin);
        rep.results() = std::move(j);
        return rep.emit(c.out, mr.certified ? kExitOk : kExitNotCertified);
    }

    if (action != "reproduce")
        throw CLI::ValidationError("counterexample", "unknown action: " + action);

    rep.statement(
        "non-uniqueness of the spectral mean equation: X0 solves it exactly, and a "
        "second solution is certified and located in a disjoint rectangle");
    ordered_json& r = rep.results();
    r["x0"] = Report::matrix_entries(ce.x0().sym());
    const auto [f1, f2] = ce.f_uv(3.0, 0.0);
    const double resid_x0 = std::hypot(f1, f2) * std::sqrt(2.0);
    r["phi_x0_norm"] = format_sig17(resid_x0);
    r["phi_x0_generic_norm"] = format_sig17(residual(ce.problem(), ce.x0()).norm);
    ordered_json dets = ordered_json::array();
    for (const auto& a : ce.problem().matrices()) dets.push_back(format_sig17(a.det()));
    r["det_a"] = std::move(dets);

    const MirandaReport mr = ce.certify(rect, samples, margin, c.threads);
    ordered_json jc;
    jc["certified"] = mr.certified;
    jc["rect"] = ordered_json::array(
        {format_sig17(rect.u_lo), format_sig17(rect.u_hi), format_sig17(rect.v_lo),
         format_sig17(rect.v_hi)});
    jc["left_min_f1"] = format_sig17(mr.left_min_f1);
    jc["right_max_f1"] = format_sig17(mr.right_max_f1);
    jc["bottom_min_f2"] = format_sig17(mr.bottom_min_f2);
    jc["top_max_f2"] = format_sig17(mr.top_max_f2);
    jc["samples_per_edge"] = mr.samples_per_edge;
    jc["margin"] = format_sig17(mr.margin);
    r["certification"] = std::move(jc);
    if (!mr.certified) return rep.emit(c.out, kExitNotCertified);

    const SecondSolution sol = ce.find_second_solution(rect, solver_options(c));
    ordered_json js;
    js["converged"] = sol.converged;
    js["u"] = format_sig17(sol.u);
    js["v"] = format_sig17(sol.v);
    js["x"] = Report::matrix_entries(sol.x.sym());
    js["residual_norm"] = format_sig17(residual(ce.problem(), sol.x).norm);
    js["det"] = format_sig17(sol.x.det());
    js["thompson_distance_to_x0"] = format_sig17(thompson_distance(sol.x, ce.x0()));
    r["second_solution"] = std::move(js);
    return rep.emit(c.out, sol.converged ? kExitOk : kExitNoConvergence);
}

int run_verify(const std::string& cmdline, const CommonOpts& c, const std::string& suite,
               int trials, std::uint64_t seed) {
    Report rep(cmdline, c);
    const SuiteReport sr = run_suite(suite, trials, seed, solver_options(c), c.threads);
    rep.statement(sr.statement);
    rep.results() = Report::suite_json(sr);
    return rep.emit(c.out, sr.failures.empty() ? kExitOk : kExitNotCertified);
}

int run_conjecture(const std::string& cmdline, const CommonOpts& c, const std::string& id,
                   int trials, std::uint64_t seed) {
    Report rep(cmdline, c);
    const SuiteReport sr = conjecture_explore(id, trials, seed, solver_options(c), c.threads);
    rep.statement(sr.statement);
    ordered_json j = Report::suite_json(sr);
    j["violations"] = sr.violations;
    j["min_slack"] = format_sig17(sr.min_slack);
    j["extremal"] = sr.extremal;
    j["note"] = "empirical evidence only; no truth claim";
    rep.results() = std::move(j);
    return rep.emit(c.out, kExitOk);
}

int run_gen(const CommonOpts& c, std::size_t n, std::size_t m, double cond,
            std::uint64_t seed) {
    std::vector<SPDMatrix> as;
    for (std::size_t i = 0; i < m; ++i) as.push_back(random_spd(n, cond, mix_seed(seed, i)));
    const MeanProblem p(WeightVector::uniform(m), std::move(as));
    if (!c.out.empty()) {
        write_problem(c.out, p);
        return kExitOk;
    }
    std::cout << problem_to_json(p);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"means of symmetric positive definite matrices and the spectral mean equation"};
    app.require_subcommand(1);
    const std::string cmdline = join_args(argc, argv);

    CommonOpts copts;

    // mean
    auto* mean = app.add_subcommand("mean", "multivariable mean of a problem file");
    std::string mean_kind;
    double mean_t = 0.5;
    std::string mean_g = "log";
    mean->add_option("--kind", mean_kind, "arithmetic|harmonic|log-euclidean|karcher|power|wasserstein|generalized")
        ->required();
    mean->add_option("--t", mean_t, "parameter for power / generalized power family");
    mean->add_option("--g", mean_g, "generator for --kind generalized: log|x-1|1-1/x|power");
    add_common(mean, copts, true);

    // mean2
    auto* mean2 = app.add_subcommand("mean2", "two-variable mean of a 2-matrix problem file");
    std::string mean2_kind;
    double mean2_t = 0.5;
    std::string mean2_f = "power";
    mean2->add_option("--kind", mean2_kind, "geo|spectral|wasserstein|alt")->required();
    mean2->add_option("--t", mean2_t, "weight parameter")->required();
    mean2->add_option("--f", mean2_f, "representing function for --kind alt: power|arith|harm");
    add_common(mean2, copts, true);

    // solve
    auto* solve = app.add_subcommand("solve", "solve sum_i w_i g(A_i # X^{-1}) = 0");
    std::string solve_g = "log";
    double solve_t = 0.5;
    std::string solve_x0;
    int solve_starts = 0;
    std::uint64_t solve_seed = 1;
    solve->add_option("--g", solve_g, "generator: log|x-1|1-1/x|power")->capture_default_str();
    solve->add_option("--t", solve_t, "parameter for --g power");
    solve->add_option("--x0", solve_x0, "initial point file (problem schema, first matrix)");
    solve->add_option("--starts", solve_starts, "multistart count (0 = single solve)");
    solve->add_option("--seed", solve_seed, "multistart seed");
    add_common(solve, copts, true);

    // explore
    auto* explore = app.add_subcommand("explore", "multistart solution-set exploration");
    std::string explore_g = "log";
    double explore_t = 0.5;
    int explore_starts = 64;
    std::uint64_t explore_seed = 1;
    explore->add_option("--g", explore_g, "generator: log|x-1|1-1/x|power")->capture_default_str();
    explore->add_option("--t", explore_t, "parameter for --g power");
    explore->add_option("--starts", explore_starts, "number of starts")->required();
    explore->add_option("--seed", explore_seed, "seed")->required();
    add_common(explore, copts, true);

    // counterexample
    auto* ce = app.add_subcommand("counterexample",
                                  "build / reproduce / certify the 2x2 non-uniqueness instance");
    std::string ce_action;
    std::vector<double> ce_rect;
    int ce_samples = 4096;
    double ce_margin = 1e-6;
    ce->add_option("action", ce_action, "build|reproduce|certify")->required();
    ce->add_option("--rect", ce_rect, "u_lo,u_hi,v_lo,v_hi")->delimiter(',')->expected(4);
    ce->add_option("--samples", ce_samples, "samples per edge")->capture_default_str();
    ce->add_option("--margin", ce_margin, "required sign margin")->capture_default_str();
    add_common(ce, copts, false);

    // verify
    auto* verify = app.add_subcommand("verify", "run a property suite");
    std::string verify_suite;
    int verify_trials = 100;
    std::uint64_t verify_seed = 1;
    verify->add_option("--suite", verify_suite, "suite id (see docs)")->required();
    verify->add_option("--trials", verify_trials, "trial count")->required();
    verify->add_option("--seed", verify_seed, "seed")->required();
    add_common(verify, copts, false);

    // conjecture
    auto* conj = app.add_subcommand("conjecture", "explore an open inequality empirically");
    std::string conj_id;
    int conj_trials = 500;
    std::uint64_t conj_seed = 1;
    conj->add_option("--id", conj_id, "s-wlog-omega|p-power-sp")->required();
    conj->add_option("--trials", conj_trials, "trial count")->required();
    conj->add_option("--seed", conj_seed, "seed")->required();
    add_common(conj, copts, false);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random problem file");
    std::size_t gen_n = 3;
    std::size_t gen_m = 3;
    double gen_cond = 100.0;
    std::uint64_t gen_seed = 1;
    gen->add_option("--n", gen_n, "dimension")->required();
    gen->add_option("--m", gen_m, "matrix count")->required();
    gen->add_option("--cond", gen_cond, "target condition number")->capture_default_str();
    gen->add_option("--seed", gen_seed, "seed")->required();
    add_common(gen, copts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (mean->parsed()) return run_mean(cmdline, copts, mean_kind, mean_t, mean_g);
        if (mean2->parsed()) return run_mean2(cmdline, copts, mean2_kind, mean2_t, mean2_f);
        if (solve->parsed())
            return run_solve(cmdline, copts, solve_g, solve_t, solve_x0, solve_starts,
                             solve_seed);
        if (explore->parsed())
            return run_explore(cmdline, copts, explore_g, explore_t, explore_starts,
                               explore_seed);
        if (ce->parsed())
            return run_counterexample(cmdline, copts, ce_action, ce_rect, ce_samples,
                                      ce_margin);
        if (verify->parsed())
            return run_verify(cmdline, copts, verify_suite, verify_trials, verify_seed);
        if (conj->parsed())
            return run_conjecture(cmdline, copts, conj_id, conj_trials, conj_seed);
        if (gen->parsed()) return run_gen(copts, gen_n, gen_m, gen_cond, gen_seed);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
