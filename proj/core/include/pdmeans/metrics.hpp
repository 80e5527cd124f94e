#pragma once

#include "pdmeans/spd.hpp"

namespace pdmeans {

enum class Metric {
    riemannian,     // || log(A^{-1/2} B A^{-1/2}) ||_F
    thompson,       // || log(A^{-1/2} B A^{-1/2}) ||  (spectral norm)
    wasserstein,    // [ tr(A + B - 2 (A^{1/2} B A^{1/2})^{1/2}) ]^{1/2}
    spectral_semi,  // || log(A^{-1} # B) ||  (spectral norm; semi-metric)
};

double distance(Metric kind, const SPDMatrix& a, const SPDMatrix& b);

/// Thompson metric, d_T.
double thompson_distance(const SPDMatrix& a, const SPDMatrix& b);

}  // namespace pdmeans
