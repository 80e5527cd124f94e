#include "pdmeans/means_multi.hpp"

#include <cmath>

#include "pdmeans/means_two.hpp"
#include "pdmeans/metrics.hpp"

namespace pdmeans {

SPDMatrix arithmetic_mean(const MeanProblem& p) {
    SymMatrix sum = p.weight(0) * p.matrix(0).sym();
    for (std::size_t i = 1; i < p.size(); ++i) sum += p.weight(i) * p.matrix(i).sym();
    return SPDMatrix(sum);
}

SPDMatrix harmonic_mean(const MeanProblem& p) {
    return arithmetic_mean(p.inverted()).inverse();
}

SPDMatrix log_euclidean_mean(const MeanProblem& p) {
    SymMatrix sum = p.weight(0) * p.matrix(0).log();
    for (std::size_t i = 1; i < p.size(); ++i) sum += p.weight(i) * p.matrix(i).log();
    return sym_exp(sum);
}

SPDMatrix elementary_mean(ElementaryMean kind, const MeanProblem& p) {
    switch (kind) {
        case ElementaryMean::arithmetic: return arithmetic_mean(p);
        case ElementaryMean::harmonic: return harmonic_mean(p);
        case ElementaryMean::log_euclidean: return log_euclidean_mean(p);
    }
    throw DomainError("elementary_mean: unknown kind");
}

namespace {

// sum_i w_i g(X^{-1/2} A_i X^{-1/2})
SymMatrix generator_residual(const MeanProblem& p, const SPDMatrix& x,
                             const std::function<double(double)>& g) {
    const Matrix xih = x.power(-0.5).sym().to_matrix();
    SymMatrix sum(p.dim());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const SPDMatrix inner(SymMatrix(xih * p.matrix(i).sym().to_matrix() * xih));
        sum += p.weight(i) * matrix_fn(inner, g);
    }
    return sum;
}

// Damped exponential update X <- X^{1/2} exp(beta R(X)) X^{1/2}, from the
// arithmetic mean, driving ||R(X)||_F below tol. Steps that increase the
// residual are rejected and halve the damping; accepted steps restore it.
SolveOutcome damped_generator_solve(const MeanProblem& p,
                                    const std::function<double(double)>& g,
                                    const SolverOptions& opts) {
    SPDMatrix x = arithmetic_mean(p);
    SymMatrix r = generator_residual(p, x, g);
    double rnorm = r.frobenius_norm();

    SolveOutcome out;
    out.iterations = 1;
    out.residual_history.push_back(rnorm);

    double damping = 1.0;
    for (int k = 0; k < opts.max_iter && !(rnorm <= opts.tol); ++k) {
        out.iterations = k + 2;
        const Matrix xh = x.sqrt().sym().to_matrix();
        const SPDMatrix cand(SymMatrix(xh * sym_exp(damping * r).sym().to_matrix() * xh));
        const SymMatrix rc = generator_residual(p, cand, g);
        const double rcn = rc.frobenius_norm();
        if (rcn <= rnorm) {
            x = cand;
            r = rc;
            rnorm = rcn;
            out.residual_history.push_back(rnorm);
            damping = std::min(1.0, 2.0 * damping);
        } else {
            damping *= 0.5;
            if (damping < opts.min_damping) break;
        }
    }
    out.solution = x;
    out.residual = rnorm;
    out.converged = rnorm <= opts.tol;
    return out;
}

}  // namespace

SolveOutcome karcher_mean(const MeanProblem& p, const SolverOptions& opts) {
    return damped_generator_solve(p, [](double v) { return std::log(v); }, opts);
}

SolveOutcome generalized_karcher(const MeanProblem& p, const RepFunction& g,
                                 const SolverOptions& opts) {
    if (!g.has_g()) throw DomainError("generalized_karcher: RepFunction has no generator g");
    return damped_generator_solve(p, g.g, opts);
}

SolveOutcome power_mean(const MeanProblem& p, double t, const SolverOptions& opts) {
    if (std::fabs(t) < 1e-3)
        throw DomainError("power_mean: |t| < 1e-3 refused, use karcher_mean");
    if (std::fabs(t) > 1.0) throw DomainError("power_mean: t must lie in [-1,1]");
    if (t < 0.0) {
        SolveOutcome out = power_mean(p.inverted(), -t, opts);
        out.solution = out.solution.inverse();
        return out;
    }
    SPDMatrix x = arithmetic_mean(p);
    SolveOutcome out;
    double step = 0.0;
    for (int k = 0; k < opts.max_iter; ++k) {
        out.iterations = k + 1;
        SymMatrix next = p.weight(0) * geo_mean_t(x, p.matrix(0), t).sym();
        for (std::size_t i = 1; i < p.size(); ++i)
            next += p.weight(i) * geo_mean_t(x, p.matrix(i), t).sym();
        const SPDMatrix xn(next);
        step = thompson_distance(x, xn);
        out.residual_history.push_back(step);
        x = xn;
        if (step <= opts.tol) break;
    }
    out.solution = x;
    out.residual = step;
    out.converged = step <= opts.tol;
    return out;
}

SolveOutcome wasserstein_mean(const MeanProblem& p, const SolverOptions& opts) {
    const SymMatrix id = SymMatrix::identity(p.dim());
    const auto equation_residual = [&](const SPDMatrix& x) {
        const SPDMatrix xi = x.inverse();
        SymMatrix sum = p.weight(0) * geo_mean(p.matrix(0), xi).sym();
        for (std::size_t i = 1; i < p.size(); ++i)
            sum += p.weight(i) * geo_mean(p.matrix(i), xi).sym();
        return (sum - id).frobenius_norm();
    };

    SPDMatrix x = arithmetic_mean(p);
    SolveOutcome out;
    for (int k = 0; k < opts.max_iter; ++k) {
        out.iterations = k + 1;
        const Matrix xh = x.sqrt().sym().to_matrix();
        const Matrix xih = x.power(-0.5).sym().to_matrix();
        SymMatrix ssum(p.dim());
        for (std::size_t i = 0; i < p.size(); ++i) {
            const SPDMatrix prod(SymMatrix(xh * p.matrix(i).sym().to_matrix() * xh));
            ssum += p.weight(i) * prod.eigensystem().apply(
                                      [](double v) { return std::sqrt(v); });
        }
        const Matrix sm = ssum.to_matrix();
        const SPDMatrix xn(SymMatrix(xih * sm * sm * xih));

        if (!out.trace_history.empty() &&
            xn.trace() < out.trace_history.back() - 1e-10)
            throw ConsistencyError("wasserstein_mean: trace sequence decreased");
        out.trace_history.push_back(xn.trace());

        const double step = thompson_distance(x, xn);
        out.residual_history.push_back(step);
        x = xn;
        if (step <= opts.tol) {
            out.residual = equation_residual(x);
            if (out.residual <= 10.0 * opts.tol) {
                out.converged = true;
                out.solution = x;
                return out;
            }
        }
    }
    out.solution = x;
    out.residual = equation_residual(x);
    out.converged = false;
    return out;
}

}  // namespace pdmeans
