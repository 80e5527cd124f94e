#include "pdmeans/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "pdmeans/means_two.hpp"

namespace pdmeans {

namespace {

// Eigenvalues of A^{-1/2} B A^{-1/2}, anchored at the better-conditioned
// operand (the spectrum is invariant under swapping A and B followed by
// inversion, and log norms are symmetric in the sign of the log).
std::vector<double> relative_spectrum(const SPDMatrix& a, const SPDMatrix& b) {
    const SPDMatrix* p = &a;
    const SPDMatrix* q = &b;
    if (q->cond() < p->cond()) std::swap(p, q);
    const Matrix pih = p->power(-0.5).sym().to_matrix();
    const SPDMatrix m(SymMatrix(pih * q->sym().to_matrix() * pih));
    return m.eigenvalues();
}

}  // namespace

double distance(Metric kind, const SPDMatrix& a, const SPDMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionError("distance: dimension mismatch");
    switch (kind) {
        case Metric::riemannian: {
            double s = 0.0;
            for (double v : relative_spectrum(a, b)) {
                const double l = std::log(v);
                s += l * l;
            }
            return std::sqrt(s);
        }
        case Metric::thompson: {
            double s = 0.0;
            for (double v : relative_spectrum(a, b)) s = std::max(s, std::fabs(std::log(v)));
            return s;
        }
        case Metric::wasserstein: {
            const Matrix ah = a.sqrt().sym().to_matrix();
            const SPDMatrix inner(SymMatrix(ah * b.sym().to_matrix() * ah));
            double cross = 0.0;
            for (double v : inner.eigenvalues()) cross += std::sqrt(v);
            const double sq = a.trace() + b.trace() - 2.0 * cross;
            return std::sqrt(std::max(0.0, sq));
        }
        case Metric::spectral_semi: {
            const SPDMatrix g = geo_mean(a.inverse(), b);
            double s = 0.0;
            for (double v : g.eigenvalues()) s = std::max(s, std::fabs(std::log(v)));
            return s;
        }
    }
    throw DomainError("distance: unknown metric");
}

double thompson_distance(const SPDMatrix& a, const SPDMatrix& b) {
    return distance(Metric::thompson, a, b);
}

}  // namespace pdmeans
