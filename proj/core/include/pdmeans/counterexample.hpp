#pragma once

#include <functional>
#include <utility>

#include "pdmeans/mean_problem.hpp"

namespace pdmeans {

/// Closed rectangle [u_lo, u_hi] x [v_lo, v_hi].
struct Rect2 {
    double u_lo, u_hi, v_lo, v_hi;

    Rect2(double ul, double uh, double vl, double vh);
    double u_mid() const { return 0.5 * (u_lo + u_hi); }
    double v_mid() const { return 0.5 * (v_lo + v_hi); }
    bool contains(double u, double v) const {
        return u >= u_lo && u <= u_hi && v >= v_lo && v <= v_hi;
    }
};

/// Sign-certification result of a 2-D field on a rectangle's edges:
/// F1 >= margin on the left edge, F1 <= -margin on the right edge,
/// F2 >= margin on the bottom edge, F2 <= -margin on the top edge,
/// each checked at equally spaced samples including the endpoints. When
/// all four hold, the field has a zero inside the rectangle.
struct MirandaReport {
    bool certified = false;
    double left_min_f1 = 0.0;    // must be >= margin
    double right_max_f1 = 0.0;   // must be <= -margin
    double bottom_min_f2 = 0.0;  // must be >= margin
    double top_max_f2 = 0.0;     // must be <= -margin
    int samples_per_edge = 0;
    double margin = 0.0;
};

using Field2 = std::function<std::pair<double, double>(double, double)>;

/// Edge-sampled sign certification of an arbitrary 2-D field.
MirandaReport miranda_certify(const Field2& field, const Rect2& rect,
                              int samples_per_edge = 4096, double margin = 0.0,
                              int threads = 1);

struct SecondSolution {
    double u = 0.0;
    double v = 0.0;
    SPDMatrix x;
    int iterations = 0;
    bool converged = false;
};

/// The non-uniqueness instance for the spectral mean equation:
/// three 2x2 SPD matrices of determinant one with uniform weights, built
/// so that X0 = diag(e^3, e^-3) solves sum_i (1/3) log(A_i # X^{-1}) = 0
/// while a second solution lies in a small certified rectangle elsewhere.
///
/// With S = diag(1,-1), T the flip matrix and c = 19/10:
///   Z_1 = 3S, Z_2 = cT, Z_3 = -Z_1 - Z_2, B_i = exp(Z_i), A_i = B_i X0 B_i.
/// All determinants are one, so every solution has the form
/// X(u,v) = exp(uS + vT) and the equation reduces to a closed-form field
/// (F1, F2) on the (u,v) plane.
class Counterexample {
  public:
    Counterexample();

    const MeanProblem& problem() const { return problem_; }
    const SPDMatrix& x0() const { return x0_; }

    /// X(u,v) = exp(uS + vT) = cosh(r) I + sinh(r)/r (uS + vT), r = |(u,v)|.
    static SPDMatrix x_of_uv(double u, double v);

    /// The residual field at X(u,v): the residual equals F1 S + F2 T.
    /// Evaluated entirely in 2x2 closed forms (no eigendecompositions).
    std::pair<double, double> f_uv(double u, double v) const;

    MirandaReport certify(const Rect2& rect, int samples_per_edge = 4096,
                          double margin = 0.0, int threads = 1) const;

    /// Damped 2-D Newton for a zero of (F1, F2) from the rectangle
    /// center. If an iterate leaves the rectangle, restarts after a
    /// Miranda-guided subdivision. The result is checked against the
    /// full-matrix residual (<= 1e-10) and against X0
    /// (Thompson distance > 0.1); violations throw ConsistencyError.
    SecondSolution find_second_solution(const Rect2& rect,
                                        const SolverOptions& opts = {}) const;

    /// Rectangle known to certify around the second solution.
    static Rect2 second_solution_rect();

  private:
    SPDMatrix x0_;
    MeanProblem problem_;
};

/// Logarithm of a 2x2 SPD matrix with determinant one, via
/// log G = theta * (G - G^{-1})/2 with theta = arcosh(t)/sqrt(t^2-1),
/// t = tr(G)/2 (theta -> 1 as t -> 1). Requires |det G - 1| <= 1e-10.
SymMatrix log2x2_det1(const SPDMatrix& g);

}  // namespace pdmeans
