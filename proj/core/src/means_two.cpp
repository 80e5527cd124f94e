#include "pdmeans/means_two.hpp"

#include <cmath>

namespace pdmeans {

namespace {

void check_same_dim(const SPDMatrix& a, const SPDMatrix& b, const char* who) {
    if (a.dim() != b.dim()) throw DimensionError(std::string(who) + ": dimension mismatch");
}

// A^{1/2} M^t A^{1/2} with M = A^{-1/2} B A^{-1/2}, no anchoring.
// Assembled as W W^T with W = A^{1/2} Q_M diag(lambda_M^{t/2}): one
// reconstruction fewer, and the diagonal of the result is a sum of
// squares, which preserves relative accuracy on graded operands.
SPDMatrix geo_fixed_anchor(const SPDMatrix& a, const SPDMatrix& b, double t) {
    const SymMatrix ah = a.eigensystem().apply([](double x) { return std::sqrt(x); });
    const SymMatrix aih = a.eigensystem().apply([](double x) { return 1.0 / std::sqrt(x); });
    const Matrix aihm = aih.to_matrix();
    const SPDMatrix inner(SymMatrix(aihm * b.sym().to_matrix() * aihm));
    Matrix w = ah.to_matrix() * inner.eigensystem().vectors;
    const auto& lam = inner.eigenvalues();
    for (std::size_t j = 0; j < lam.size(); ++j) {
        const double s = std::pow(lam[j], 0.5 * t);
        for (std::size_t i = 0; i < w.rows(); ++i) w(i, j) *= s;
    }
    return SPDMatrix(SymMatrix(w * w.transposed()));
}

}  // namespace

SPDMatrix geo_mean_t(const SPDMatrix& a, const SPDMatrix& b, double t) {
    check_same_dim(a, b, "geo_mean_t");
    if (b.cond() < a.cond()) return geo_fixed_anchor(b, a, 1.0 - t);
    return geo_fixed_anchor(a, b, t);
}

SPDMatrix geo_mean(const SPDMatrix& a, const SPDMatrix& b) {
    return geo_mean_t(a, b, 0.5);
}

SPDMatrix riccati_solve(const SPDMatrix& a, const SPDMatrix& b) {
    check_same_dim(a, b, "riccati_solve");
    const SPDMatrix x = geo_mean(a, b);
    const Matrix xm = x.sym().to_matrix();
    const SymMatrix residual(xm * a.inverse().sym().to_matrix() * xm);
    if ((residual - b.sym()).frobenius_norm() > 1e-10 * b.sym().frobenius_norm())
        throw ConsistencyError("riccati_solve: X A^{-1} X = B residual check failed");
    return x;
}

SPDMatrix spectral_mean_t(const SPDMatrix& a, const SPDMatrix& b, double t) {
    check_same_dim(a, b, "spectral_mean_t");
    if (t < 0.0 || t > 1.0) throw DomainError("spectral_mean_t: t must lie in [0,1]");
    const SPDMatrix g = geo_mean(a.inverse(), b);
    const Matrix gt = g.power(t).sym().to_matrix();
    return SPDMatrix(SymMatrix(gt * a.sym().to_matrix() * gt));
}

SPDMatrix wasserstein2_t(const SPDMatrix& a, const SPDMatrix& b, double t) {
    check_same_dim(a, b, "wasserstein2_t");
    if (t < 0.0 || t > 1.0) throw DomainError("wasserstein2_t: t must lie in [0,1]");
    const SPDMatrix g = geo_mean(a.inverse(), b);
    SymMatrix nav = SymMatrix::identity(a.dim());
    nav = (1.0 - t) * nav + t * g.sym();
    const Matrix nm = nav.to_matrix();
    return SPDMatrix(SymMatrix(nm * a.sym().to_matrix() * nm));
}

SPDMatrix alt_mean(const SPDMatrix& a, const SPDMatrix& b, const RepFunction& f) {
    check_same_dim(a, b, "alt_mean");
    if (!f.has_f()) throw DomainError("alt_mean: RepFunction has no representing function");
    const SPDMatrix g = geo_mean(a.inverse(), b);
    const SymMatrix fg = matrix_fn(g, f.f);
    const Matrix fgm = fg.to_matrix();
    const SymMatrix result(fgm * a.sym().to_matrix() * fgm);
    return SPDMatrix(result);  // rejects nonpositive f on the spectrum
}

SPDMatrix sigma_f(const SPDMatrix& u, const SPDMatrix& v, const RepFunction& f) {
    check_same_dim(u, v, "sigma_f");
    if (!f.has_f()) throw DomainError("sigma_f: RepFunction has no representing function");
    const Matrix uh = u.sqrt().sym().to_matrix();
    const Matrix uih = u.power(-0.5).sym().to_matrix();
    const SPDMatrix inner(SymMatrix(uih * v.sym().to_matrix() * uih));
    const SymMatrix finner = matrix_fn(inner, f.f);
    return SPDMatrix(SymMatrix(uh * finner.to_matrix() * uh));
}

double verify_alt_equation(const SPDMatrix& a, const SPDMatrix& b,
                           const RepFunction& f, const SPDMatrix& x) {
    check_same_dim(a, b, "verify_alt_equation");
    check_same_dim(a, x, "verify_alt_equation");
    const SPDMatrix xinv = x.inverse();
    const SPDMatrix u = geo_mean(a, xinv);
    const SPDMatrix v = geo_mean(b, xinv);
    const SPDMatrix m = sigma_f(u, v, f);
    return (m.sym() - SymMatrix::identity(a.dim())).frobenius_norm();
}

}  // namespace pdmeans
