#pragma once

#include "pdmeans/rep_function.hpp"
#include "pdmeans/spd.hpp"

namespace pdmeans {

/// Weighted metric geometric mean A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}.
/// Defined for all real t (geodesic extension). Internally anchors the
/// congruence at the better-conditioned operand via A #_t B = B #_{1-t} A,
/// which preserves accuracy on badly graded inputs.
SPDMatrix geo_mean_t(const SPDMatrix& a, const SPDMatrix& b, double t);

/// A # B = A #_{1/2} B.
SPDMatrix geo_mean(const SPDMatrix& a, const SPDMatrix& b);

/// Unique SPD solution X of X A^{-1} X = B (which is A # B); verifies the
/// residual ||X A^{-1} X - B||_F <= 1e-10 ||B||_F and throws
/// ConsistencyError otherwise.
SPDMatrix riccati_solve(const SPDMatrix& a, const SPDMatrix& b);

/// Weighted spectral geometric mean A natural_t B = (A^{-1} # B)^t A (A^{-1} # B)^t,
/// t in [0,1].
SPDMatrix spectral_mean_t(const SPDMatrix& a, const SPDMatrix& b, double t);

/// Two-variable Wasserstein mean (I nabla_t (A^{-1} # B)) A (I nabla_t (A^{-1} # B)),
/// t in [0,1].
SPDMatrix wasserstein2_t(const SPDMatrix& a, const SPDMatrix& b, double t);

/// Alternative mean f(A^{-1} # B) A f(A^{-1} # B) for a representing
/// function f; throws DomainError if f is not positive on the needed
/// spectrum.
SPDMatrix alt_mean(const SPDMatrix& a, const SPDMatrix& b, const RepFunction& f);

/// Kubo-Ando operator mean U sigma_f V = U^{1/2} f(U^{-1/2} V U^{-1/2}) U^{1/2}.
SPDMatrix sigma_f(const SPDMatrix& u, const SPDMatrix& v, const RepFunction& f);

/// Frobenius norm of (A # X^{-1}) sigma_f (B # X^{-1}) - I; zero exactly
/// when X solves the two-variable alternative-mean equation.
double verify_alt_equation(const SPDMatrix& a, const SPDMatrix& b,
                           const RepFunction& f, const SPDMatrix& x);

}  // namespace pdmeans
