#include "pdmeans/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdmeans/metrics.hpp"
#include "pdmeans/parallel.hpp"
#include "pdmeans/spectral_equation.hpp"

namespace pdmeans {

namespace {

constexpr double kC = 19.0 / 10.0;

// theta(t) = arcosh(t)/sqrt(t^2 - 1), continuously 1 at t = 1.
double theta_of(double t) {
    if (t < 1.0) t = 1.0;  // clamp rounding noise; G is SPD with det 1
    const double e = t - 1.0;
    if (e < 1e-8) return 1.0 - e / 3.0;
    return std::acosh(t) / std::sqrt(t * t - 1.0);
}

SymMatrix make_h(double u, double v) {
    SymMatrix h(2);
    h.set(0, 0, u);
    h.set(1, 1, -u);
    h.set(0, 1, v);
    return h;
}

}  // namespace

Rect2::Rect2(double ul, double uh, double vl, double vh)
    : u_lo(ul), u_hi(uh), v_lo(vl), v_hi(vh) {
    if (!(u_lo < u_hi) || !(v_lo < v_hi))
        throw DomainError("Rect2: edges must have positive length");
}

SPDMatrix Counterexample::x_of_uv(double u, double v) {
    const double r = std::hypot(u, v);
    if (r == 0.0) return SPDMatrix::identity(2);
    const double ch = std::cosh(r);
    const double sc = std::sinh(r) / r;
    SymMatrix x(2);
    x.set(0, 0, ch + sc * u);
    x.set(1, 1, ch - sc * u);
    x.set(0, 1, sc * v);
    return SPDMatrix(x);
}

Counterexample::Counterexample()
    : x0_(x_of_uv(3.0, 0.0)),
      problem_(WeightVector::uniform(3),
               [] {
                   const SPDMatrix b1 = x_of_uv(3.0, 0.0);
                   const SPDMatrix b2 = x_of_uv(0.0, kC);
                   const SPDMatrix b3 = x_of_uv(-3.0, -kC);
                   const SPDMatrix x0 = x_of_uv(3.0, 0.0);
                   std::vector<SPDMatrix> a;
                   for (const SPDMatrix* b : {&b1, &b2, &b3}) {
                       const Matrix bm = b->sym().to_matrix();
                       a.emplace_back(SymMatrix(bm * x0.sym().to_matrix() * bm));
                   }
                   return a;
               }()) {
    for (const auto& ai : problem_.matrices()) {
        if (std::fabs(ai.det() - 1.0) > 1e-12)
            throw ConsistencyError("Counterexample: det A_i deviates from 1");
    }
}

std::pair<double, double> Counterexample::f_uv(double u, double v) const {
    const SPDMatrix x = x_of_uv(u, v);
    // adjugate = inverse, since det X = 1
    const double xi00 = x(1, 1);
    const double xi11 = x(0, 0);
    const double xi01 = -x(0, 1);

    double f1 = 0.0;
    double f2 = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const SPDMatrix& ai = problem_.matrix(i);
        const double m00 = ai(0, 0) + xi00;
        const double m01 = ai(0, 1) + xi01;
        const double m11 = ai(1, 1) + xi11;
        const double s = std::sqrt(m00 * m11 - m01 * m01);
        const double a = m00 / s;
        const double b = m01 / s;
        const double d = m11 / s;
        const double theta = theta_of(0.5 * (a + d));
        f1 += problem_.weight(i) * theta * 0.5 * (a - d);
        f2 += problem_.weight(i) * theta * b;
    }
    return {f1, f2};
}

MirandaReport miranda_certify(const Field2& field, const Rect2& rect,
                              int samples_per_edge, double margin, int threads) {
    if (samples_per_edge < 2)
        throw DomainError("miranda_certify: samples_per_edge must be >= 2");
    if (margin < 0.0) throw DomainError("miranda_certify: margin must be >= 0");

    const int n = samples_per_edge;
    std::vector<double> left(n), right(n), bottom(n), top(n);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t k) {
        const double fu = static_cast<double>(k) / (n - 1);
        const double u = rect.u_lo + fu * (rect.u_hi - rect.u_lo);
        const double v = rect.v_lo + fu * (rect.v_hi - rect.v_lo);
        left[k] = field(rect.u_lo, v).first;
        right[k] = field(rect.u_hi, v).first;
        bottom[k] = field(u, rect.v_lo).second;
        top[k] = field(u, rect.v_hi).second;
    });

    MirandaReport rep;
    rep.samples_per_edge = n;
    rep.margin = margin;
    rep.left_min_f1 = *std::min_element(left.begin(), left.end());
    rep.right_max_f1 = *std::max_element(right.begin(), right.end());
    rep.bottom_min_f2 = *std::min_element(bottom.begin(), bottom.end());
    rep.top_max_f2 = *std::max_element(top.begin(), top.end());
    rep.certified = rep.left_min_f1 >= margin && rep.right_max_f1 <= -margin &&
                    rep.bottom_min_f2 >= margin && rep.top_max_f2 <= -margin;
    return rep;
}

MirandaReport Counterexample::certify(const Rect2& rect, int samples_per_edge,
                                      double margin, int threads) const {
    return miranda_certify([this](double u, double v) { return f_uv(u, v); }, rect,
                           samples_per_edge, margin, threads);
}

SecondSolution Counterexample::find_second_solution(const Rect2& rect,
                                                    const SolverOptions& opts) const {
    Rect2 active = rect;
    SecondSolution sol;
    double u = active.u_mid();
    double v = active.v_mid();

    const double root_tol = 1e-12;
    int restarts = 0;
    for (int it = 0; it < opts.max_iter; ++it) {
        sol.iterations = it + 1;
        auto [f1, f2] = f_uv(u, v);
        if (std::fabs(f1) <= root_tol && std::fabs(f2) <= root_tol) {
            sol.converged = true;
            break;
        }
        const double h = 1e-7;
        const auto fu_p = f_uv(u + h, v);
        const auto fu_m = f_uv(u - h, v);
        const auto fv_p = f_uv(u, v + h);
        const auto fv_m = f_uv(u, v - h);
        const double j00 = (fu_p.first - fu_m.first) / (2 * h);
        const double j01 = (fv_p.first - fv_m.first) / (2 * h);
        const double j10 = (fu_p.second - fu_m.second) / (2 * h);
        const double j11 = (fv_p.second - fv_m.second) / (2 * h);
        const double det = j00 * j11 - j01 * j10;
        if (det == 0.0) throw ConsistencyError("find_second_solution: singular Jacobian");
        double du = (-f1 * j11 + f2 * j01) / det;
        double dv = (-f2 * j00 + f1 * j10) / det;

        // damped step halving while the residual does not improve
        const double base = std::hypot(f1, f2);
        double scale = 1.0;
        bool stepped = false;
        for (int bt = 0; bt < 30; ++bt) {
            const double un = u + scale * du;
            const double vn = v + scale * dv;
            if (active.contains(un, vn)) {
                const auto fn = f_uv(un, vn);
                if (std::hypot(fn.first, fn.second) < base) {
                    u = un;
                    v = vn;
                    stepped = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if (!stepped) {
            // Newton wants to leave the rectangle (or cannot improve):
            // subdivide and recurse into a quadrant whose edges still
            // carry the certifying signs.
            if (++restarts > 40) break;
            const Rect2 quads[4] = {
                Rect2(active.u_lo, active.u_mid(), active.v_lo, active.v_mid()),
                Rect2(active.u_mid(), active.u_hi, active.v_lo, active.v_mid()),
                Rect2(active.u_lo, active.u_mid(), active.v_mid(), active.v_hi),
                Rect2(active.u_mid(), active.u_hi, active.v_mid(), active.v_hi)};
            bool found = false;
            for (const Rect2& q : quads) {
                if (certify(q, 257, 0.0).certified) {
                    active = q;
                    u = active.u_mid();
                    v = active.v_mid();
                    found = true;
                    break;
                }
            }
            if (!found) break;
        }
    }

    sol.u = u;
    sol.v = v;
    sol.x = x_of_uv(u, v);
    if (sol.converged) {
        if (residual(problem_, sol.x).norm > 1e-10)
            throw ConsistencyError("find_second_solution: full residual check failed");
        if (thompson_distance(sol.x, x0_) <= 0.1)
            throw ConsistencyError("find_second_solution: root is not distinct from X0");
    }
    return sol;
}

Rect2 Counterexample::second_solution_rect() {
    return Rect2(1.61247432825, 1.62347432825, 0.5194188906, 0.5254188906);
}

SymMatrix log2x2_det1(const SPDMatrix& g) {
    if (g.dim() != 2) throw DimensionError("log2x2_det1: matrix must be 2x2");
    if (std::fabs(g.det() - 1.0) > 1e-10)
        throw DomainError("log2x2_det1: determinant deviates from 1 beyond 1e-10");
    const double a = g(0, 0);
    const double b = g(0, 1);
    const double d = g(1, 1);
    const double theta = theta_of(0.5 * (a + d));
    SymMatrix m(2);
    m.set(0, 0, theta * 0.5 * (a - d));
    m.set(1, 1, -theta * 0.5 * (a - d));
    m.set(0, 1, theta * b);
    return m;
}

}  // namespace pdmeans
