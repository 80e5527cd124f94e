#include "pdmeans/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pdmeans/errors.hpp"

namespace pdmeans {

double EigenSystem::cond() const {
    return values.front() / values.back();
}

namespace {

double offdiag_norm(const Matrix& a) {
    const std::size_t n = a.rows();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

}  // namespace

EigenSystem jacobi_eigensystem(const SymMatrix& sym) {
    const std::size_t n = sym.dim();
    Matrix a = sym.to_matrix();
    Matrix v = Matrix::identity(n);

    const double norm = a.frobenius_norm();
    const double stop = 1e-14 * norm;
    constexpr int kMaxSweeps = 60;

    if (n > 1 && norm > 0.0) {
        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            if (offdiag_norm(a) <= stop) break;
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const double apq = a(p, q);
                    if (apq == 0.0) continue;
                    const double app = a(p, p);
                    const double aqq = a(q, q);
                    // rotation angle from the 2x2 pivot block
                    const double tau = (aqq - app) / (2.0 * apq);
                    double t;
                    if (tau >= 0.0)
                        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                    else
                        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;

                    for (std::size_t i = 0; i < n; ++i) {
                        const double aip = a(i, p);
                        const double aiq = a(i, q);
                        a(i, p) = c * aip - s * aiq;
                        a(i, q) = s * aip + c * aiq;
                    }
                    for (std::size_t j = 0; j < n; ++j) {
                        const double apj = a(p, j);
                        const double aqj = a(q, j);
                        a(p, j) = c * apj - s * aqj;
                        a(q, j) = s * apj + c * aqj;
                    }
                    a(p, q) = 0.0;  // annihilated exactly
                    a(q, p) = 0.0;
                    for (std::size_t i = 0; i < n; ++i) {
                        const double vip = v(i, p);
                        const double viq = v(i, q);
                        v(i, p) = c * vip - s * viq;
                        v(i, q) = s * vip + c * viq;
                    }
                }
            }
        }
    }

    EigenSystem es;
    es.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) es.values[i] = a(i, i);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return es.values[x] > es.values[y];
    });

    EigenSystem out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = es.values[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

}  // namespace pdmeans
