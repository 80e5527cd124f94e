#include "pdmeans/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "pdmeans/counterexample.hpp"
#include "pdmeans/means_multi.hpp"
#include "pdmeans/means_two.hpp"
#include "pdmeans/metrics.hpp"
#include "pdmeans/order.hpp"
#include "pdmeans/parallel.hpp"
#include "pdmeans/spectral_equation.hpp"

namespace pdmeans {

SPDMatrix random_spd(std::size_t n, double cond, Rng& rng) {
    if (n < 1) throw DomainError("random_spd: n must be >= 1");
    if (cond < 1.0) throw DomainError("random_spd: cond must be >= 1");
    const double hi = 0.5 * std::log(cond);
    EigenSystem es;
    es.values.resize(n);
    for (double& v : es.values) v = std::exp(rng.uniform(-hi, hi));
    es.vectors = random_orthogonal(n, rng);
    return SPDMatrix::from_eigensystem(std::move(es));
}

SPDMatrix random_spd(std::size_t n, double cond, std::uint64_t seed) {
    Rng rng(seed);
    return random_spd(n, cond, rng);
}

MeanProblem random_problem(std::size_t n, std::size_t m, double cond, Rng& rng) {
    std::vector<double> w(m);
    for (double& x : w) x = rng.uniform(0.25, 1.0);
    std::vector<SPDMatrix> as;
    as.reserve(m);
    for (std::size_t i = 0; i < m; ++i) as.push_back(random_spd(n, cond, rng));
    return MeanProblem(WeightVector(std::move(w)), std::move(as));
}

namespace {

constexpr double kSuiteTol = 1e-9;

double pick(const std::vector<double>& v, int trial) {
    return v[static_cast<std::size_t>(trial) % v.size()];
}

struct TrialResult {
    bool pass = true;
    double margin = std::numeric_limits<double>::infinity();
    std::string what;
};

// Collects the worst margin and the first failing condition.
struct Checker {
    TrialResult r;

    void require(bool ok, double margin, const char* what) {
        r.margin = std::min(r.margin, margin);
        if (!ok && r.pass) {
            r.pass = false;
            std::ostringstream s;
            s << what << " (margin " << margin << ")";
            r.what = s.str();
        }
    }
    // order-style margin: holds at tolerance tol if margin >= -tol
    void order(const OrderReport& rep, const char* what) {
        require(rep.holds, rep.margin, what);
    }
    // closeness: err <= tol, margin recorded as tol - err
    void close(double err, double tol, const char* what) {
        require(err <= tol, tol - err, what);
    }
    void converged(const SolveOutcome& s, const char* what) {
        require(s.converged, s.converged ? r.margin : -s.residual, what);
    }
};

double rel_err(const SymMatrix& a, const SymMatrix& b) {
    return (a - b).frobenius_norm() / b.frobenius_norm();
}

SPDMatrix le2(const SPDMatrix& a, const SPDMatrix& b, double t) {
    return sym_exp((1.0 - t) * a.log() + t * b.log());
}

using TrialFn = std::function<TrialResult(std::uint64_t trial_seed, int trial,
                                          const SolverOptions& opts)>;

struct SuiteDef {
    std::string statement;
    TrialFn fn;
};

std::pair<std::size_t, std::size_t> cycle_dims(int trial) {
    static constexpr std::size_t ns[] = {2, 3, 5};
    static constexpr std::size_t ms[] = {2, 3, 4};
    return {ns[trial % 3], ms[(trial / 3) % 3]};
}

// ---- suite bodies ----

TrialResult two_var_chain_trial(std::uint64_t seed, int trial, const SolverOptions&) {
    Rng rng(seed);
    const auto [n, m] = cycle_dims(trial);
    (void)m;
    const double cond = pick({4, 20, 100, 1e3, 1e4, 1e6}, trial);
    const SPDMatrix a = random_spd(n, cond, rng);
    const SPDMatrix b = random_spd(n, cond, rng);
    Checker c;
    for (int k = 1; k <= 9; ++k) {
        const double t = 0.1 * k;
        const SPDMatrix geo = geo_mean_t(a, b, t);
        const SPDMatrix le = le2(a, b, t);
        const SPDMatrix nat = spectral_mean_t(a, b, t);
        const SPDMatrix was = wasserstein2_t(a, b, t);
        c.order(order_check(OrderRelation::log_major, geo, le, kSuiteTol),
                "geo_mean_t <log le2");
        c.order(order_check(OrderRelation::log_major, le, nat, kSuiteTol),
                "le2 <log spectral_mean_t");
        c.order(order_check(OrderRelation::near, nat, was, kSuiteTol),
                "spectral_mean_t <=near wasserstein2_t");
    }
    return c.r;
}

TrialResult multi_chain_trial(std::uint64_t seed, int trial, const SolverOptions& opts) {
    Rng rng(seed);
    const auto [n, m] = cycle_dims(trial);
    const double cond = pick({4, 20, 100, 1e3, 1e4}, trial);
    const MeanProblem p = random_problem(n, m, cond, rng);
    Checker c;
    const SolveOutcome lam = karcher_mean(p, opts);
    const SolveOutcome omg = wasserstein_mean(p, opts);
    c.converged(lam, "karcher_mean converged");
    c.converged(omg, "wasserstein_mean converged");
    if (!c.r.pass) return c.r;
    const SPDMatrix h = harmonic_mean(p);
    const SPDMatrix le = log_euclidean_mean(p);
    const SPDMatrix ar = arithmetic_mean(p);
    c.order(order_check(OrderRelation::loewner, h, lam.solution, kSuiteTol),
            "harmonic <= karcher");
    c.order(order_check(OrderRelation::log_major, lam.solution, le, kSuiteTol),
            "karcher <log le");
    c.order(order_check(OrderRelation::weak_log_major, le, omg.solution, kSuiteTol),
            "le <wlog wasserstein");
    c.order(order_check(OrderRelation::loewner, omg.solution, ar, kSuiteTol),
            "wasserstein <= arithmetic");
    return c.r;
}

TrialResult karcher_props_trial(std::uint64_t seed, int trial, const SolverOptions& opts) {
    Rng rng(seed);
    const auto [n, m] = cycle_dims(trial);
    const double cond = pick({4, 20, 100, 1e3, 1e4}, trial);
    const MeanProblem p = random_problem(n, m, cond, rng);
    Checker c;
    const SolveOutcome lam = karcher_mean(p, opts);
    c.converged(lam, "karcher_mean converged");
    if (!c.r.pass) return c.r;
    const SPDMatrix& x = lam.solution;

    // joint homogeneity
    {
        std::vector<SPDMatrix> scaled;
        double factor = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double ai = rng.uniform(0.5, 2.0);
            factor *= std::pow(ai, p.weight(i));
            scaled.push_back(p.matrix(i).power(1.0).dim() == n
                                 ? SPDMatrix::from_eigensystem([&] {
                                       EigenSystem es = p.matrix(i).eigensystem();
                                       for (double& v : es.values) v *= ai;
                                       return es;
                                   }())
                                 : p.matrix(i));
        }
        const SolveOutcome lam2 = karcher_mean(MeanProblem(p.weights(), scaled), opts);
        c.converged(lam2, "homogeneity: scaled solve converged");
        if (lam2.converged)
            c.close(rel_err(lam2.solution.sym(), SymMatrix(factor * x.sym())), kSuiteTol,
                    "joint homogeneity");
    }
    // permutation invariance (rotate by one)
    {
        std::vector<double> w2;
        std::vector<SPDMatrix> a2;
        for (std::size_t i = 0; i < m; ++i) {
            w2.push_back(p.weight((i + 1) % m));
            a2.push_back(p.matrix((i + 1) % m));
        }
        const SolveOutcome lam2 = karcher_mean(MeanProblem(WeightVector(w2), a2), opts);
        c.converged(lam2, "permutation: solve converged");
        if (lam2.converged)
            c.close(rel_err(lam2.solution.sym(), x.sym()), kSuiteTol, "permutation invariance");
    }
    // congruence invariance
    {
        Matrix s(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s(i, j) = rng.gaussian();
        for (std::size_t i = 0; i < n; ++i) s(i, i) += 3.0;  // keep comfortably invertible
        std::vector<SPDMatrix> a2;
        for (std::size_t i = 0; i < m; ++i) a2.push_back(congruence(s, p.matrix(i)));
        const SolveOutcome lam2 = karcher_mean(MeanProblem(p.weights(), a2), opts);
        c.converged(lam2, "congruence: solve converged");
        if (lam2.converged)
            c.close(rel_err(lam2.solution.sym(), congruence(s, x).sym()), kSuiteTol,
                    "congruence invariance");
    }
    // self-duality
    {
        const SolveOutcome lam2 = karcher_mean(p.inverted(), opts);
        c.converged(lam2, "self-duality: solve converged");
        if (lam2.converged)
            c.close(rel_err(lam2.solution.sym(), x.inverse().sym()), kSuiteTol, "self-duality");
    }
    // determinant identity
    {
        double logdet = 0.0;
        for (std::size_t i = 0; i < m; ++i) logdet += p.weight(i) * p.matrix(i).log_det();
        c.close(std::fabs(x.log_det() - logdet), kSuiteTol, "determinant identity");
    }
    // AGH sandwich
    c.order(order_check(OrderRelation::loewner, harmonic_mean(p), x, kSuiteTol),
            "harmonic <= karcher");
    c.order(order_check(OrderRelation::loewner, x, arithmetic_mean(p), kSuiteTol),
            "karcher <= arithmetic");
    // monotonicity and Thompson contraction against a dominating tuple
    {
        std::vector<SPDMatrix> bigger;
        double contraction_bound = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const SPDMatrix delta = random_spd(n, 10.0, rng);
            SymMatrix sum = p.matrix(i).sym() + SymMatrix(0.3 * delta.sym());
            bigger.emplace_back(sum);
            contraction_bound +=
                p.weight(i) * thompson_distance(p.matrix(i), bigger.back());
        }
        const SolveOutcome lam2 = karcher_mean(MeanProblem(p.weights(), bigger), opts);
        c.converged(lam2, "monotonicity: solve converged");
        if (lam2.converged) {
            c.order(order_check(OrderRelation::loewner, x, lam2.solution, kSuiteTol),
                    "monotonicity");
            c.close(thompson_distance(x, lam2.solution) - contraction_bound, kSuiteTol,
                    "thompson contraction");
        }
    }
    return c.r;
}

// Shared: solve the spectral mean equation for a random instance.
struct GammaSolve {
    MeanProblem p;
    SolveOutcome outcome;
};

GammaSolve gamma_solve(std::uint64_t seed, int trial, const SolverOptions& opts,
                       const std::vector<double>& conds = {4, 20, 100, 1e3}) {
    Rng rng(seed);
    const auto [n, m] = cycle_dims(trial);
    MeanProblem p = random_problem(n, m, pick(conds, trial), rng);
    SolveOutcome out = solve_equation(p, RepFunction::g_log(), opts);
    return {std::move(p), std::move(out)};
}

TrialResult gamma_props_trial(std::uint64_t seed, int trial, const SolverOptions& opts) {
    Rng rng(mix_seed(seed, 0x9a)); // independent stream for auxiliary draws
    Checker c;
    GammaSolve gs = gamma_solve(seed, trial, opts);
    c.converged(gs.outcome, "solve converged");
    if (!c.r.pass) return c.r;
    const MeanProblem& p = gs.p;
    const SPDMatrix& x = gs.outcome.solution;
    const std::size_t n = p.dim();
    const RepFunction g = RepFunction::g_log();

    // homogeneity
    {
        const double alpha = rng.uniform(0.5, 2.0);
        const SolveOutcome s2 = solve_equation(p.scaled(alpha), g, opts);
        c.converged(s2, "homogeneity: scaled solve converged");
        if (s2.converged)
            c.close(rel_err(s2.solution.sym(), SymMatrix(alpha * x.sym())), kSuiteTol,
                    "homogeneity");
    }
    // permutation invariance
    {
        const std::size_t m = p.size();
        std::vector<double> w2;
        std::vector<SPDMatrix> a2;
        for (std::size_t i = 0; i < m; ++i) {
            w2.push_back(p.weight((i + 1) % m));
            a2.push_back(p.matrix((i + 1) % m));
        }
        const SolveOutcome s2 = solve_equation(MeanProblem(WeightVector(w2), a2), g, opts);
        c.converged(s2, "permutation: solve converged");
        if (s2.converged)
            c.close(rel_err(s2.solution.sym(), x.sym()), kSuiteTol, "permutation invariance");
    }
    // unitary congruence invariance
    {
        const Matrix q = random_orthogonal(n, rng);
        std::vector<SPDMatrix> a2;
        for (std::size_t i = 0; i < p.size(); ++i) a2.push_back(congruence(q, p.matrix(i)));
        const SolveOutcome s2 = solve_equation(MeanProblem(p.weights(), a2), g, opts);
        c.converged(s2, "unitary congruence: solve converged");
        if (s2.converged)
            c.close(rel_err(s2.solution.sym(), congruence(q, x).sym()), kSuiteTol,
                    "unitary congruence invariance");
    }
    // inversion
    {
        const EquationResidual inv_res = residual(p.inverted(), x.inverse(), g);
        c.close(inv_res.norm, std::max(10.0 * opts.tol, 1e-10), "inversion residual");
        const SolveOutcome s2 = solve_equation(p.inverted(), g, x.inverse(), opts);
        c.converged(s2, "inversion: solve converged");
        if (s2.converged)
            c.close(thompson_distance(s2.solution, x.inverse()), 1e-8,
                    "inversion: solve stays at X^{-1}");
    }
    // determinant identity
    {
        double logdet = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            logdet += p.weight(i) * p.matrix(i).log_det();
        c.close(std::fabs(x.log_det() - logdet), kSuiteTol, "determinant identity");
    }
    // commuting (diagonal) case
    {
        const std::size_t m = p.size();
        std::vector<SPDMatrix> diag;
        std::vector<double> logx(n, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> d(n);
            for (std::size_t j = 0; j < n; ++j) {
                d[j] = std::exp(rng.uniform(-1.5, 1.5));
                logx[j] += p.weight(i) * std::log(d[j]);
            }
            diag.push_back(SPDMatrix::diagonal(d));
        }
        std::vector<double> xr(n);
        for (std::size_t j = 0; j < n; ++j) xr[j] = std::exp(logx[j]);
        const MeanProblem pd(p.weights(), diag);
        c.close(residual(pd, SPDMatrix::diagonal(xr), g).norm, 1e-10,
                "commuting case: product solves the equation");
    }
    // compound-matrix membership (k = 2; dimensions above 4 skipped)
    if (n >= 2 && n <= 4) {
        std::vector<SPDMatrix> ca;
        for (std::size_t i = 0; i < p.size(); ++i)
            ca.emplace_back(compound(p.matrix(i).sym(), 2));
        const MeanProblem cp(p.weights(), ca);
        c.close(residual(cp, SPDMatrix(compound(x.sym(), 2)), g).norm, 1e-8,
                "compound membership");
    }
    return c.r;
}

TrialResult gamma_bounds_trial(std::uint64_t seed, int trial, const SolverOptions& opts) {
    Checker c;
    GammaSolve gs = gamma_solve(seed, trial, opts);
    c.converged(gs.outcome, "solve converged");
    if (!c.r.pass) return c.r;
    const MeanProblem& p = gs.p;
    const SPDMatrix& x = gs.outcome.solution;
    const SymMatrix id2 = SymMatrix(2.0 * SymMatrix::identity(p.dim()));

    SymMatrix inv_sum(p.dim());
    SymMatrix sum(p.dim());
    for (std::size_t i = 0; i < p.size(); ++i) {
        inv_sum += p.weight(i) * p.matrix(i).inverse().sym();
        sum += p.weight(i) * p.matrix(i).sym();
    }
    c.order(order_check(OrderRelation::loewner, id2 - inv_sum, x.sym(), kSuiteTol),
            "lower bound 2I - sum w_i A_i^{-1} <= X");
    const SymMatrix upper_arg = id2 - sum;
    if (jacobi_eigensystem(upper_arg).lambda_min() > 0.0) {
        c.order(order_check(OrderRelation::loewner, x, SPDMatrix(upper_arg).inverse(), kSuiteTol),
                "upper bound X <= (2I - sum w_i A_i)^{-1}");
    }
    return c.r;
}

TrialResult near_sandwich_trial(std::uint64_t seed, int trial, const SolverOptions& opts) {
    Checker c;
    GammaSolve gs = gamma_solve(seed, trial, opts);
    c.converged(gs.outcome, "solve converged");
    if (!c.r.pass) return c.r;
    c.order(order_check(OrderRelation::near, harmonic_mean(gs.p), gs.outcome.solution,
                        kSuiteTol),
            "harmonic <=near X");
    c.order(order_check(OrderRelation::near, gs.outcome.solution, arithmetic_mean(gs.p),
                        kSuiteTol),
            "X <=near arithmetic");
    return c.r;
}

TrialResult le_major_trial(std::uint64_t seed, int trial, const SolverOptions& opts) {
    Checker c;
    GammaSolve gs = gamma_solve(seed, trial, opts);
    c.converged(gs.outcome, "solve converged");
    if (!c.r.pass) return c.r;
    c.order(order_check(OrderRelation::log_major, log_euclidean_mean(gs.p),
                        gs.outcome.solution, kSuiteTol),
            "LE <log X");
    return c.r;
}

TrialResult trace_prop_trial(std::uint64_t seed, int trial, const SolverOptions& opts) {
    Checker c;
    GammaSolve gs = gamma_solve(seed, trial, opts);
    c.converged(gs.outcome, "solve converged");
    if (!c.r.pass) return c.r;
    // rescale by homogeneity so the solution satisfies X <= I
    const double scale = 1.0 / gs.outcome.solution.lambda_max();
    const MeanProblem ps = gs.p.scaled(scale);
    EigenSystem es = gs.outcome.solution.eigensystem();
    for (double& v : es.values) v *= scale;
    const SPDMatrix xs = SPDMatrix::from_eigensystem(std::move(es));
    c.close(residual(ps, xs).norm, std::max(10.0 * opts.tol, 1e-10),
            "rescaled point still solves the equation");
    const SolveOutcome omg = wasserstein_mean(ps, opts);
    c.converged(omg, "wasserstein_mean converged");
    if (!c.r.pass) return c.r;
    double tr3 = 0.0;
    for (double v : xs.eigenvalues()) tr3 += v * v * v;
    c.close(tr3 - omg.solution.trace(), kSuiteTol, "tr X^3 <= tr Omega");
    return c.r;
}

TrialResult power_cmp_trial(std::uint64_t seed, int trial, const SolverOptions& opts) {
    Checker c;
    GammaSolve gs = gamma_solve(seed, trial, opts);
    c.converged(gs.outcome, "solve converged");
    if (!c.r.pass) return c.r;
    // rescale by homogeneity so the solution satisfies X >= I
    const double scale = 1.0 / gs.outcome.solution.lambda_min();
    const MeanProblem ps = gs.p.scaled(scale);
    EigenSystem es = gs.outcome.solution.eigensystem();
    for (double& v : es.values) v *= scale;
    const SPDMatrix xs = SPDMatrix::from_eigensystem(std::move(es));
    for (const double t : {0.5, 0.75, 1.0}) {
        const SolveOutcome pt = power_mean(ps, t, opts);
        c.converged(pt, "power_mean converged");
        if (pt.converged)
            c.order(order_check(OrderRelation::loewner, xs.inverse(), pt.solution, kSuiteTol),
                    "X^{-1} <= P_t");
    }
    return c.r;
}

TrialResult lie_trotter_trial(std::uint64_t seed, int trial, const SolverOptions& opts) {
    Rng rng(seed);
    const auto [n, m] = cycle_dims(trial);
    const MeanProblem p = random_problem(n, m, pick({4, 20, 100}, trial), rng);
    Checker c;
    const SymMatrix le = log_euclidean_mean(p).sym();
    double prev_l = 0.0, prev_o = 0.0, prev_s = 0.0;
    SPDMatrix warm = arithmetic_mean(p.power(0.5));
    for (int k = 1; k <= 8; ++k) {
        const double s = std::pow(2.0, -k);
        const MeanProblem ps = p.power(s);
        const SolveOutcome lam = karcher_mean(ps, opts);
        const SolveOutcome omg = wasserstein_mean(ps, opts);
        c.converged(lam, "karcher_mean converged");
        c.converged(omg, "wasserstein_mean converged");
        SolveOutcome sp = solve_equation(ps, RepFunction::g_log(), warm, opts);
        c.converged(sp, "spectral equation solve converged");
        if (!c.r.pass) return c.r;
        warm = sp.solution.sqrt();  // warm start for the next halving

        const double el = (lam.solution.power(1.0 / s).sym() - le).frobenius_norm();
        const double eo = (omg.solution.power(1.0 / s).sym() - le).frobenius_norm();
        const double es = (sp.solution.power(1.0 / s).sym() - le).frobenius_norm();
        if (k > 1) {
            c.require(el < prev_l, prev_l - el, "karcher convergent in s");
            c.require(eo < prev_o, prev_o - eo, "wasserstein convergent in s");
            c.require(es < prev_s, prev_s - es, "spectral convergent in s");
        }
        prev_l = el;
        prev_o = eo;
        prev_s = es;
    }
    return c.r;
}

TrialResult geodesic_ds_trial(std::uint64_t seed, int trial, const SolverOptions&) {
    Rng rng(seed);
    const auto [n, m] = cycle_dims(trial);
    (void)m;
    const double cond = pick({4, 20, 100, 1e3, 1e6}, trial);
    const SPDMatrix a = random_spd(n, cond, rng);
    const SPDMatrix b = random_spd(n, cond, rng);
    const double dab = distance(Metric::spectral_semi, a, b);
    Checker c;
    for (const double s : {0.0, 0.25, 0.75}) {
        for (const double t : {0.5, 1.0}) {
            const double lhs = distance(Metric::spectral_semi, spectral_mean_t(a, b, s),
                                        spectral_mean_t(a, b, t));
            c.close(std::fabs(lhs - std::fabs(s - t) * dab), kSuiteTol,
                    "d_S(nat_s, nat_t) = |s-t| d_S(A,B)");
        }
    }
    return c.r;
}

TrialResult wass_trace_trial(std::uint64_t seed, int trial, const SolverOptions& opts) {
    Rng rng(seed);
    const auto [n, m] = cycle_dims(trial);
    const MeanProblem p = random_problem(n, m, pick({4, 20, 100, 1e3, 1e4}, trial), rng);
    Checker c;
    const SolveOutcome omg = wasserstein_mean(p, opts);  // throws on trace decrease
    c.converged(omg, "wasserstein_mean converged");
    if (!c.r.pass) return c.r;
    const auto& tr = omg.trace_history;
    const double lim = tr.back();
    for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
        c.require(tr[k] <= tr[k + 1] + 1e-10, tr[k + 1] - tr[k], "trace nondecreasing");
        c.require(tr[k] <= lim + 1e-10, lim - tr[k], "trace bounded by the limit");
    }
    return c.r;
}

TrialResult flow_deriv_trial(std::uint64_t seed, int trial, const SolverOptions&) {
    Rng rng(seed);
    const auto [n, m] = cycle_dims(trial);
    const MeanProblem p = random_problem(n, m, pick({4, 20, 100, 1e3}, trial), rng);
    const SPDMatrix x = random_spd(n, 50.0, rng);
    Checker c;
    const double half_norm = 0.5 * std::sqrt(static_cast<double>(n));
    const SymMatrix half = SymMatrix(0.5 * SymMatrix::identity(n));

    const double e5 = (flow_derivative_check(p, x, 1e-5) + half).frobenius_norm();
    c.close(e5, 1e-6, "FD derivative = -1/2 I at h = 1e-5");

    // O(h^2) decay, measured where the h^2 term dominates the FD noise
    const double e3 = (flow_derivative_check(p, x, 1e-3) + half).frobenius_norm();
    const double e3h = (flow_derivative_check(p, x, 5e-4) + half).frobenius_norm();
    const double ratio = e3 / e3h;
    c.require(ratio > 3.2 && ratio < 4.8, std::min(ratio - 3.2, 4.8 - ratio),
              "O(h^2) decay under h-halving");
    (void)half_norm;
    return c.r;
}

const std::vector<std::pair<std::string, SuiteDef>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteDef>> table = {
        {"two-var-chain",
         {"geo_mean_t(A,B,t) <log exp((1-t)log A + t log B) <log spectral_mean_t(A,B,t) "
          "<=near wasserstein2_t(A,B,t), t = 0.1..0.9",
          two_var_chain_trial}},
        {"multi-chain",
         {"harmonic <= Karcher (Loewner), Karcher <log log-Euclidean, log-Euclidean "
          "<wlog Wasserstein, Wasserstein <= arithmetic (Loewner)",
          multi_chain_trial}},
        {"karcher-props",
         {"Karcher mean: joint homogeneity, permutation/congruence invariance, "
          "self-duality, determinant identity, AGH sandwich, monotonicity, Thompson "
          "contraction",
          karcher_props_trial}},
        {"gamma-props",
         {"spectral-equation solution set: homogeneity, permutation and unitary "
          "invariance, inversion, determinant identity, commuting case, compound "
          "membership",
          gamma_props_trial}},
        {"gamma-bounds",
         {"2I - sum w_i A_i^{-1} <= X, and X <= (2I - sum w_i A_i)^{-1} when the "
          "argument is positive definite",
          gamma_bounds_trial}},
        {"near-sandwich",
         {"harmonic <=near X <=near arithmetic for every converged solution X",
          near_sandwich_trial}},
        {"le-major",
         {"log-Euclidean mean <log X for every converged solution X", le_major_trial}},
        {"trace-prop",
         {"after homogeneity rescaling to X <= I: tr X^3 <= tr Omega", trace_prop_trial}},
        {"power-cmp",
         {"after homogeneity rescaling to X >= I: X^{-1} <= P_t for t in {0.5, 0.75, 1}",
          power_cmp_trial}},
        {"lie-trotter",
         {"||M(A^s)^{1/s} - LE||_F strictly decreasing for s = 2^-k, k = 1..8, for the "
          "Karcher, Wasserstein and spectral-equation means",
          lie_trotter_trial}},
        {"geodesic-ds",
         {"d_S(A nat_s B, A nat_t B) = |s - t| d_S(A, B)", geodesic_ds_trial}},
        {"wass-trace",
         {"Wasserstein K-iteration: nondecreasing trace bounded by the limit trace",
          wass_trace_trial}},
        {"flow-deriv",
         {"scaling derivative of the residual field equals -1/2 I, with O(h^2) "
          "central-difference error",
          flow_deriv_trial}},
    };
    return table;
}

SuiteReport run_trials(const std::string& name, const std::string& statement,
                       const TrialFn& fn, int trials, std::uint64_t seed,
                       const SolverOptions& opts, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<TrialResult> results(static_cast<std::size_t>(std::max(trials, 0)));
    parallel_for(results.size(), threads, [&](std::size_t i) {
        const std::uint64_t trial_seed = mix_seed(seed, i);
        try {
            results[i] = fn(trial_seed, static_cast<int>(i), opts);
        } catch (const std::exception& e) {
            results[i] = {false, -std::numeric_limits<double>::infinity(), e.what()};
        }
    });

    SuiteReport rep;
    rep.suite = name;
    rep.statement = statement;
    rep.trials = trials;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto [n, m] = cycle_dims(static_cast<int>(i));
        rep.worst_margin = std::min(rep.worst_margin, results[i].margin);
        if (results[i].pass) {
            ++rep.passes;
        } else {
            rep.failures.push_back({static_cast<int>(i), mix_seed(seed, i), n, m,
                                    results[i].margin, results[i].what});
        }
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

}  // namespace

const std::vector<std::string>& suite_catalog() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, def] : suite_table()) out.push_back(name);
        return out;
    }();
    return names;
}

SuiteReport run_suite(const std::string& suite, int trials, std::uint64_t seed,
                      const SolverOptions& opts, int threads) {
    for (const auto& [name, def] : suite_table()) {
        if (name == suite)
            return run_trials(name, def.statement, def.fn, trials, seed, opts, threads);
    }
    throw DomainError("run_suite: unknown suite '" + suite + "'");
}

namespace {

struct ConjectureOutcome {
    TrialResult result;
    double slack = std::numeric_limits<double>::infinity();
};

SuiteReport explore(const std::string& id, const std::string& statement,
                    const std::function<ConjectureOutcome(std::uint64_t, int,
                                                          const SolverOptions&)>& fn,
                    int trials, std::uint64_t seed, const SolverOptions& opts,
                    int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<ConjectureOutcome> results(static_cast<std::size_t>(std::max(trials, 0)));
    parallel_for(results.size(), threads, [&](std::size_t i) {
        try {
            results[i] = fn(mix_seed(seed, i), static_cast<int>(i), opts);
        } catch (const std::exception& e) {
            results[i].result = {false, -std::numeric_limits<double>::infinity(), e.what()};
        }
    });

    SuiteReport rep;
    rep.suite = id;
    rep.statement = statement;
    rep.trials = trials;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto [n, m] = cycle_dims(static_cast<int>(i));
        const auto& out = results[i];
        rep.worst_margin = std::min(rep.worst_margin, out.result.margin);
        if (out.result.pass)
            ++rep.passes;
        else
            rep.failures.push_back({static_cast<int>(i), mix_seed(seed, i), n, m,
                                    out.result.margin, out.result.what});
        if (out.result.pass && out.slack < -1e-9) ++rep.violations;
        if (out.slack < rep.min_slack) {
            rep.min_slack = out.slack;
            std::ostringstream key;
            key << "trial " << i << " seed " << mix_seed(seed, i) << " n " << n << " m "
                << m;
            rep.extremal = key.str();
        }
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

}  // namespace

SuiteReport conjecture_explore(const std::string& id, int trials, std::uint64_t seed,
                               const SolverOptions& opts, int threads) {
    if (id == "s-wlog-omega") {
        return explore(
            id,
            "searched: every converged solution X weakly log-majorized by the "
            "Wasserstein mean (no violation expected; evidence only)",
            [](std::uint64_t s, int trial, const SolverOptions& o) {
                ConjectureOutcome out;
                Checker c;
                GammaSolve gs = gamma_solve(s, trial, o);
                c.converged(gs.outcome, "solve converged");
                if (c.r.pass) {
                    const SolveOutcome omg = wasserstein_mean(gs.p, o);
                    c.converged(omg, "wasserstein_mean converged");
                    if (c.r.pass)
                        out.slack = order_check(OrderRelation::weak_log_major,
                                                gs.outcome.solution, omg.solution, 1e-9)
                                        .margin;
                }
                out.result = c.r;
                return out;
            },
            trials, seed, opts, threads);
    }
    if (id == "p-power-sp") {
        return explore(
            id,
            "searched: S(A^p)^{1/p} <log S(A) for p in (0,1) (no violation expected; "
            "evidence only)",
            [](std::uint64_t s, int trial, const SolverOptions& o) {
                ConjectureOutcome out;
                Checker c;
                GammaSolve gs = gamma_solve(s, trial, o);
                c.converged(gs.outcome, "solve converged");
                if (c.r.pass) {
                    const double p_exp = pick({0.5, 0.25, 0.75}, trial);
                    const SolveOutcome sp =
                        solve_equation(gs.p.power(p_exp), RepFunction::g_log(), o);
                    c.converged(sp, "powered solve converged");
                    if (c.r.pass)
                        out.slack = order_check(OrderRelation::log_major,
                                                sp.solution.power(1.0 / p_exp),
                                                gs.outcome.solution, 1e-9)
                                        .margin;
                }
                out.result = c.r;
                return out;
            },
            trials, seed, opts, threads);
    }
    throw DomainError("conjecture_explore: unknown id '" + id + "'");
}

}  // namespace pdmeans
