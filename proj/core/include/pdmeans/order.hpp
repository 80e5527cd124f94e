#pragma once

#include <string>

#include "pdmeans/spd.hpp"

namespace pdmeans {

enum class OrderRelation {
    loewner,          // B - A positive semi-definite
    strict_loewner,   // B - A positive definite
    near,             // A^{-1} # B >= I
    eig_pointwise,    // lambda_j(A) <= lambda_j(B) for all j (sorted descending)
    weak_log_major,   // prod_{j<=k} lambda_j(A) <= prod_{j<=k} lambda_j(B), k = 1..n
    log_major,        // weak_log_major and det A = det B
};

/// Result of an order check. `margin` is the worst slack over all
/// conditions making up the relation; the relation holds at tolerance
/// `tol` iff margin >= -tol (margin > tol for strict_loewner). Product
/// comparisons report relative slack.
struct OrderReport {
    OrderRelation relation;
    bool holds = false;
    double margin = 0.0;
    double tol = 0.0;
};

/// Order check for symmetric operands. Relations `near`, `log_major` and
/// `weak_log_major` require both operands SPD and throw
/// NotPositiveDefiniteError otherwise.
OrderReport order_check(OrderRelation rel, const SymMatrix& a, const SymMatrix& b, double tol);
OrderReport order_check(OrderRelation rel, const SPDMatrix& a, const SPDMatrix& b, double tol);

/// k-th compound matrix: entries indexed by k-subsets of rows/columns in
/// lexicographic order, each entry the determinant of the corresponding
/// k x k submatrix. Realizes the k-th antisymmetric tensor power;
/// multiplicative over matrix products.
SymMatrix compound(const SymMatrix& a, std::size_t k);
Matrix compound(const Matrix& a, std::size_t k);

std::string to_string(OrderRelation rel);

}  // namespace pdmeans
