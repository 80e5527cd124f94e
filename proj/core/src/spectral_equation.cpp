#include "pdmeans/spectral_equation.hpp"

#include <cmath>
#include <sstream>

#include "pdmeans/means_multi.hpp"
#include "pdmeans/means_two.hpp"
#include "pdmeans/metrics.hpp"
#include "pdmeans/parallel.hpp"
#include "pdmeans/rng.hpp"

namespace pdmeans {

EquationResidual residual(const MeanProblem& p, const SPDMatrix& x, const RepFunction& g) {
    if (!g.has_g()) throw DomainError("residual: RepFunction has no generator g");
    if (x.dim() != p.dim()) throw DimensionError("residual: dimension mismatch");
    const SPDMatrix xi = x.inverse();
    SymMatrix sum(p.dim());
    for (std::size_t i = 0; i < p.size(); ++i)
        sum += p.weight(i) * matrix_fn(geo_mean(p.matrix(i), xi), g.g);
    return {sum, sum.frobenius_norm()};
}

EquationResidual residual(const MeanProblem& p, const SPDMatrix& x) {
    return residual(p, x, RepFunction::g_log());
}

EquationResidual psi_residual(const MeanProblem& p, const SPDMatrix& x,
                              const SolverOptions& opts) {
    if (x.dim() != p.dim()) throw DimensionError("psi_residual: dimension mismatch");
    const SPDMatrix xi = x.inverse();
    std::vector<SPDMatrix> mapped;
    mapped.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) mapped.push_back(geo_mean(p.matrix(i), xi));

    SolverOptions inner = opts;
    inner.tol = std::max(opts.tol / 100.0, 1e-15);
    const SolveOutcome lam = karcher_mean(MeanProblem(p.weights(), std::move(mapped)), inner);
    if (!lam.converged)
        throw ConvergenceError("psi_residual: inner Karcher mean did not converge");
    const SymMatrix psi = lam.solution.sym() - SymMatrix::identity(p.dim());
    return {psi, psi.frobenius_norm()};
}

namespace {

// One application of the fixed-point map M(X) = Lambda_g(w; (X^{1/2} A_i X^{1/2})^{1/2}).
// The inner mean is solved two orders tighter than the outer target; an
// inner failure is tolerated (the outer residual is the certificate).
SPDMatrix fixed_point_map(const MeanProblem& p, const RepFunction& g, const SPDMatrix& x,
                          const SolverOptions& opts) {
    const Matrix xh = x.sqrt().sym().to_matrix();
    std::vector<SPDMatrix> roots;
    roots.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const SPDMatrix prod(SymMatrix(xh * p.matrix(i).sym().to_matrix() * xh));
        roots.push_back(prod.sqrt());
    }
    SolverOptions inner = opts;
    inner.tol = std::max(opts.tol / 100.0, 1e-15);
    const MeanProblem inner_problem(p.weights(), std::move(roots));
    const SolveOutcome mean = (g.name == "log") ? karcher_mean(inner_problem, inner)
                                                : generalized_karcher(inner_problem, g, inner);
    return mean.solution;
}

// Orthonormal basis of n x n symmetric matrices under the Frobenius
// inner product.
std::vector<SymMatrix> sym_basis(std::size_t n) {
    std::vector<SymMatrix> basis;
    basis.reserve(n * (n + 1) / 2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            SymMatrix e(n);
            e.set(i, j, i == j ? 1.0 : inv_sqrt2);
            basis.push_back(e);
        }
    }
    return basis;
}

double frobenius_dot(const SymMatrix& a, const SymMatrix& b) {
    double s = 0.0;
    const auto& da = a.data();
    const auto& db = b.data();
    for (std::size_t k = 0; k < da.size(); ++k) s += da[k] * db[k];
    return s;
}

// Damped Newton on the vectorized residual with a finite-difference
// Jacobian. The fixed-point map of the mean equation is only linearly
// (sometimes not at all) contracting at a root; Newton finishes stalled
// iterates and reaches roots the map repels. Keeps x and r only on
// improvement; returns true once the residual meets tol.
bool newton_finish(const MeanProblem& p, const RepFunction& g, SPDMatrix& x,
                   EquationResidual& r, double tol, double alpha, double beta,
                   int max_steps, int& evals) {
    const std::size_t n = p.dim();
    const auto basis = sym_basis(n);
    const std::size_t d = basis.size();

    for (int step = 0; step < max_steps; ++step) {
        if (r.norm <= tol) return true;
        const double h = 1e-7 * x.sym().frobenius_norm();
        Matrix jac(d, d);
        for (std::size_t c = 0; c < d; ++c) {
            SymMatrix xp = x.sym();
            SymMatrix xm = x.sym();
            xp += h * basis[c];
            xm += (-h) * basis[c];
            SymMatrix diff(n);
            try {
                diff = residual(p, SPDMatrix(xp), g).matrix - residual(p, SPDMatrix(xm), g).matrix;
            } catch (const NotPositiveDefiniteError&) {
                return r.norm <= tol;
            }
            evals += 2;
            for (std::size_t row = 0; row < d; ++row)
                jac(row, c) = frobenius_dot(diff, basis[row]) / (2.0 * h);
        }
        Matrix rhs(d, 1);
        for (std::size_t row = 0; row < d; ++row) rhs(row, 0) = -frobenius_dot(r.matrix, basis[row]);
        Matrix delta(d, 1);
        try {
            delta = jac.inverse() * rhs;
        } catch (const SingularError&) {
            return r.norm <= tol;
        }
        SymMatrix dir(n);
        for (std::size_t c = 0; c < d; ++c) dir += delta(c, 0) * basis[c];

        double step_len = 1.0;
        bool improved = false;
        for (int bt = 0; bt < 14; ++bt) {
            const SymMatrix cand_sym = x.sym() + step_len * dir;
            try {
                SPDMatrix cand(cand_sym);
                if (cand.lambda_min() >= 0.25 * alpha && cand.lambda_max() <= 4.0 * beta) {
                    EquationResidual rc = residual(p, cand, g);
                    ++evals;
                    if (rc.norm < r.norm) {
                        x = std::move(cand);
                        r = std::move(rc);
                        improved = true;
                        break;
                    }
                }
            } catch (const NotPositiveDefiniteError&) {
                // shrink the step until the candidate is SPD
            }
            step_len *= 0.5;
        }
        if (!improved) return r.norm <= tol;
    }
    return r.norm <= tol;
}

}  // namespace

SolveOutcome solve_equation(const MeanProblem& p, const RepFunction& g,
                            const SPDMatrix& x0, const SolverOptions& opts) {
    if (x0.dim() != p.dim()) throw DimensionError("solve_equation: dimension mismatch");
    const double alpha = p.spectrum_floor();
    const double beta = p.spectrum_ceil();

    SPDMatrix x = x0;
    EquationResidual r = residual(p, x, g);

    SolveOutcome out;
    out.iterations = 1;
    out.residual_history.push_back(r.norm);

    // Phase 1: damped fixed-point iteration. The map contracts slowly (or
    // not at all) near some roots, so once progress flattens out, hand the
    // iterate to the Newton finisher instead of burning the budget.
    double damping = 1.0;
    const double initial_norm = r.norm;
    for (int k = 0; k < opts.max_iter && !(r.norm <= opts.tol); ++k) {
        out.iterations = k + 2;
        const SPDMatrix target = fixed_point_map(p, g, x, opts);
        const SPDMatrix cand = (damping == 1.0) ? target : geo_mean_t(x, target, damping);
        if (cand.lambda_min() < 0.5 * alpha || cand.lambda_max() > 2.0 * beta) {
            std::ostringstream msg;
            msg << "solve_equation: iterate left [alpha/2 I, 2 beta I] "
                << "(alpha = " << alpha << ", beta = " << beta << ")";
            throw DivergenceError(msg.str());
        }
        const EquationResidual rc = residual(p, cand, g);
        if (rc.norm <= r.norm) {
            x = cand;
            r = rc;
            out.residual_history.push_back(r.norm);
            damping = std::min(1.0, 2.0 * damping);
        } else {
            damping *= 0.5;
            if (damping < opts.min_damping) break;
        }
        const std::size_t hist = out.residual_history.size();
        const bool slow = hist >= 25 &&
                          r.norm > 0.2 * out.residual_history[hist - 21] &&
                          r.norm < 0.1 * initial_norm;
        if (slow) break;
    }

    if (!(r.norm <= opts.tol)) {
        int evals = 0;
        newton_finish(p, g, x, r, opts.tol, alpha, beta, 50, evals);
        out.iterations += evals;
        out.residual_history.push_back(r.norm);
    }

    out.solution = x;
    out.residual = r.norm;
    out.converged = r.norm <= opts.tol;
    if (out.converged) {
        // every solution lies in the data's Loewner interval
        const double slack = 1e-9;
        if (x.lambda_min() < alpha * (1.0 - slack) - slack ||
            x.lambda_max() > beta * (1.0 + slack) + slack)
            throw ConsistencyError(
                "solve_equation: converged point violates the [alpha I, beta I] bound");
    }
    return out;
}

SolveOutcome solve_equation(const MeanProblem& p, const RepFunction& g,
                            const SolverOptions& opts) {
    return solve_equation(p, g, arithmetic_mean(p), opts);
}

bool SolutionSet::contains(const SPDMatrix& x, double dist) const {
    for (const auto& c : clusters)
        if (c.representative.dim() == x.dim() &&
            thompson_distance(c.representative, x) <= dist)
            return true;
    return false;
}

SolutionSet explore_solutions(const MeanProblem& p, const RepFunction& g, int n_starts,
                              std::uint64_t seed, const SolverOptions& opts, int threads) {
    if (n_starts < 1) throw DomainError("explore_solutions: n_starts must be >= 1");
    const double alpha = p.spectrum_floor();
    const double beta = p.spectrum_ceil();
    const std::size_t n = p.dim();

    struct StartResult {
        bool converged = false;
        SPDMatrix solution;
        double residual = 0.0;
    };
    std::vector<StartResult> results(static_cast<std::size_t>(n_starts));

    parallel_for(static_cast<std::size_t>(n_starts), threads, [&](std::size_t s) {
        Rng rng(mix_seed(seed, s));
        std::vector<double> lam(n);
        for (double& v : lam) v = std::exp(rng.uniform(std::log(alpha), std::log(beta)));
        const Matrix q = random_orthogonal(n, rng);
        EigenSystem es;
        es.values = std::move(lam);
        es.vectors = q;
        const SPDMatrix start = SPDMatrix::from_eigensystem(std::move(es));
        try {
            SolveOutcome sol = solve_equation(p, g, start, opts);
            if (sol.converged) {
                // polish for tight clustering
                SolverOptions fine = opts;
                fine.tol = std::max(opts.tol / 10.0, 5e-15);
                fine.max_iter = 100;
                SolveOutcome polished = solve_equation(p, g, sol.solution, fine);
                const SolveOutcome& best =
                    (polished.residual <= sol.residual) ? polished : sol;
                results[s] = {true, best.solution, best.residual};
            }
        } catch (const DivergenceError&) {
            // counted as a failed start
        } catch (const ConsistencyError&) {
        }
    });

    SolutionSet set;
    set.starts = n_starts;
    for (const auto& res : results) {
        if (!res.converged) {
            ++set.failures;
            continue;
        }
        bool merged = false;
        for (auto& c : set.clusters) {
            const double d = thompson_distance(c.representative, res.solution);
            if (d <= 1e-4) {
                ++c.members;
                c.max_spread = std::max(c.max_spread, d);
                merged = true;
                break;
            }
        }
        if (!merged)
            set.clusters.push_back({res.solution, 1, 0.0, res.residual, true});
    }
    for (auto& c : set.clusters) c.tight = c.max_spread <= 10.0 * opts.tol;
    return set;
}

SymMatrix flow_derivative_check(const MeanProblem& p, const SPDMatrix& x, double h) {
    if (h < 1e-6 || h > 1e-3)
        throw DomainError("flow_derivative_check: h must lie in [1e-6, 1e-3]");
    const auto scale = [&](double c) {
        EigenSystem es = x.eigensystem();
        for (double& v : es.values) v *= c;
        return SPDMatrix::from_eigensystem(std::move(es));
    };
    const SymMatrix fp = residual(p, scale(1.0 + h)).matrix;
    const SymMatrix fm = residual(p, scale(1.0 - h)).matrix;
    return (0.5 / h) * (fp - fm);
}

}  // namespace pdmeans
