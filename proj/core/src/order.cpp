#include "pdmeans/order.hpp"

#include <algorithm>
#include <cmath>

#include "pdmeans/means_two.hpp"

namespace pdmeans {

namespace {

OrderReport spectral_difference_report(OrderRelation rel, const SymMatrix& a,
                                       const SymMatrix& b, double tol) {
    const EigenSystem es = jacobi_eigensystem(b - a);
    OrderReport rep{rel, false, es.values.back(), tol};
    rep.holds = (rel == OrderRelation::strict_loewner) ? rep.margin > tol
                                                       : rep.margin >= -tol;
    return rep;
}

OrderReport spd_pair_report(OrderRelation rel, const SPDMatrix& a, const SPDMatrix& b,
                            double tol) {
    OrderReport rep{rel, false, 0.0, tol};
    switch (rel) {
        case OrderRelation::near: {
            const SPDMatrix g = geo_mean(a.inverse(), b);
            rep.margin = g.lambda_min() - 1.0;
            rep.holds = rep.margin >= -tol;
            return rep;
        }
        case OrderRelation::eig_pointwise: {
            const auto& la = a.eigenvalues();
            const auto& lb = b.eigenvalues();
            double worst = lb[0] - la[0];
            for (std::size_t j = 1; j < la.size(); ++j) worst = std::min(worst, lb[j] - la[j]);
            rep.margin = worst;
            rep.holds = rep.margin >= -tol;
            return rep;
        }
        case OrderRelation::weak_log_major:
        case OrderRelation::log_major: {
            // relative slack of the top-k eigenvalue products, in log space
            const auto& la = a.eigenvalues();
            const auto& lb = b.eigenvalues();
            double delta = 0.0;
            double worst = 1.0;
            for (std::size_t k = 0; k < la.size(); ++k) {
                delta += std::log(la[k]) - std::log(lb[k]);
                worst = std::min(worst, -std::expm1(delta));
            }
            if (rel == OrderRelation::log_major) {
                const double da = a.det();
                const double db = b.det();
                worst = std::min(worst, -(std::fabs(da - db) / std::fabs(db)));
            }
            rep.margin = worst;
            rep.holds = rep.margin >= -tol;
            return rep;
        }
        default:
            return spectral_difference_report(rel, a.sym(), b.sym(), tol);
    }
}

}  // namespace

OrderReport order_check(OrderRelation rel, const SymMatrix& a, const SymMatrix& b,
                        double tol) {
    if (a.dim() != b.dim()) throw DimensionError("order_check: dimension mismatch");
    switch (rel) {
        case OrderRelation::loewner:
        case OrderRelation::strict_loewner:
            return spectral_difference_report(rel, a, b, tol);
        default:
            // remaining relations need SPD operands
            return spd_pair_report(rel, SPDMatrix(a), SPDMatrix(b), tol);
    }
}

OrderReport order_check(OrderRelation rel, const SPDMatrix& a, const SPDMatrix& b,
                        double tol) {
    if (a.dim() != b.dim()) throw DimensionError("order_check: dimension mismatch");
    switch (rel) {
        case OrderRelation::loewner:
        case OrderRelation::strict_loewner:
            return spectral_difference_report(rel, a.sym(), b.sym(), tol);
        default:
            return spd_pair_report(rel, a, b, tol);
    }
}

namespace {

std::vector<std::vector<std::size_t>> lex_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        // advance to the next k-subset in lexicographic order
        std::size_t i = k;
        while (i-- > 0) {
            if (cur[i] != i + n - k) {
                ++cur[i];
                for (std::size_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
                break;
            }
            if (i == 0) return out;
        }
    }
}

}  // namespace

Matrix compound(const Matrix& a, std::size_t k) {
    if (!a.square()) throw DimensionError("compound: matrix not square");
    const std::size_t n = a.rows();
    if (k < 1 || k > n) throw DomainError("compound: k out of range");
    const auto subsets = lex_subsets(n, k);
    const std::size_t m = subsets.size();
    Matrix c(m, m);
    Matrix sub(k, k);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t s = 0; s < m; ++s) {
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(subsets[r][i], subsets[s][j]);
            c(r, s) = sub.determinant();
        }
    }
    return c;
}

SymMatrix compound(const SymMatrix& a, std::size_t k) {
    return SymMatrix(compound(a.to_matrix(), k));
}

std::string to_string(OrderRelation rel) {
    switch (rel) {
        case OrderRelation::loewner: return "loewner";
        case OrderRelation::strict_loewner: return "strict_loewner";
        case OrderRelation::near: return "near";
        case OrderRelation::eig_pointwise: return "eig_pointwise";
        case OrderRelation::weak_log_major: return "weak_log_major";
        case OrderRelation::log_major: return "log_major";
    }
    return "unknown";
}

}  // namespace pdmeans
