#include "pdmeans/spd.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace pdmeans {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void validate_spectrum(const std::vector<double>& values, std::size_t n) {
    if (values.empty()) throw DomainError("SPDMatrix: empty matrix");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("SPDMatrix: non-finite eigenvalue");
    const double lo = values.back();
    const double hi = values.front();
    if (!(lo > static_cast<double>(n) * kEps * hi)) {
        std::ostringstream msg;
        msg << "SPDMatrix: not positive definite (min eig = " << lo
            << ", max eig = " << hi << ")";
        throw NotPositiveDefiniteError(msg.str());
    }
}

}  // namespace

SPDMatrix::SPDMatrix(SymMatrix base) : base_(std::move(base)) {
    es_ = jacobi_eigensystem(base_);
    validate_spectrum(es_.values, base_.dim());
    // reconstruction must agree with the operand
    const SymMatrix rebuilt = es_.apply([](double x) { return x; });
    if ((rebuilt - base_).frobenius_norm() > 1e-12 * base_.frobenius_norm())
        throw ConsistencyError("SPDMatrix: eigendecomposition reconstruction failed");
}

SPDMatrix SPDMatrix::identity(std::size_t n) {
    return SPDMatrix::diagonal(std::vector<double>(n, 1.0));
}

SPDMatrix SPDMatrix::diagonal(const std::vector<double>& d) {
    EigenSystem es;
    es.values = d;
    es.vectors = Matrix::identity(d.size());
    return from_eigensystem(std::move(es));
}

SPDMatrix SPDMatrix::from_eigensystem(EigenSystem es) {
    const std::size_t n = es.values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return es.values[x] > es.values[y];
    });

    SPDMatrix out;
    out.es_.values.resize(n);
    out.es_.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.es_.values[j] = es.values[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.es_.vectors(i, j) = es.vectors(i, order[j]);
    }
    validate_spectrum(out.es_.values, n);
    out.base_ = out.es_.apply([](double x) { return x; });
    return out;
}

double SPDMatrix::det() const {
    double d = 1.0;
    for (double v : es_.values) d *= v;
    return d;
}

double SPDMatrix::log_det() const {
    double s = 0.0;
    for (double v : es_.values) s += std::log(v);
    return s;
}

SPDMatrix SPDMatrix::power(double t) const {
    EigenSystem es = es_;
    for (double& v : es.values) v = std::pow(v, t);
    return from_eigensystem(std::move(es));
}

SymMatrix SPDMatrix::log() const {
    return es_.apply([](double x) { return std::log(x); });
}

SymMatrix matrix_fn(const SPDMatrix& a, const std::function<double(double)>& f) {
    for (double v : a.eigenvalues()) {
        const double fv = f(v);
        if (!std::isfinite(fv)) {
            std::ostringstream msg;
            msg << "matrix_fn: f is non-finite at eigenvalue " << v;
            throw DomainError(msg.str());
        }
    }
    return a.eigensystem().apply(f);
}

SPDMatrix matrix_fn_spd(const SPDMatrix& a, const std::function<double(double)>& f) {
    EigenSystem es = a.eigensystem();
    for (double& v : es.values) {
        const double fv = f(v);
        if (!std::isfinite(fv) || fv <= 0.0) {
            std::ostringstream msg;
            msg << "matrix_fn_spd: f is not positive and finite at eigenvalue " << v
                << " (f = " << fv << ")";
            throw DomainError(msg.str());
        }
        v = fv;
    }
    return SPDMatrix::from_eigensystem(std::move(es));
}

SPDMatrix sym_exp(const SymMatrix& h) {
    EigenSystem es = jacobi_eigensystem(h);
    for (double& v : es.values) {
        v = std::exp(v);
        if (!std::isfinite(v) || v <= 0.0)
            throw DomainError("sym_exp: overflow or underflow in exp of eigenvalue");
    }
    return SPDMatrix::from_eigensystem(std::move(es));
}

SPDMatrix congruence(const Matrix& s, const SPDMatrix& a) {
    if (!s.square() || s.rows() != a.dim())
        throw DimensionError("congruence: shape mismatch");
    // condition estimate from the Gram spectrum: cond(S) = sqrt(cond(S^T S))
    const EigenSystem gram = jacobi_eigensystem(SymMatrix(s.transposed() * s));
    if (!(gram.values.back() > 0.0) ||
        std::sqrt(gram.values.front() / gram.values.back()) >= 1e12)
        throw SingularError("congruence: S numerically singular");
    return SPDMatrix(sandwich(s, a.sym()));
}

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
    if (w_.empty()) throw DomainError("WeightVector: empty");
    double sum = 0.0;
    for (double x : w_) {
        if (!(x > 0.0)) throw DomainError("WeightVector: weights must be positive");
        sum += x;
    }
    for (double& x : w_) x /= sum;
}

WeightVector WeightVector::uniform(std::size_t m) {
    return WeightVector(std::vector<double>(m, 1.0));
}

}  // namespace pdmeans
