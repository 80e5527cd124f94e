#include "pdmeans/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "pdmeans/errors.hpp"

namespace pdmeans {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_)
        throw DimensionError("Matrix: entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("Matrix +: shape mismatch");
    Matrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("Matrix -: shape mismatch");
    Matrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("Matrix +=: shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("Matrix -=: shape mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

Matrix operator*(double s, const Matrix& m) {
    Matrix r = m;
    for (double& x : r.a_) x *= s;
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("Matrix *: shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            const double* brow = &o.a_[k * o.cols_];
            double* rrow = &r.a_[i * o.cols_];
            for (std::size_t j = 0; j < o.cols_; ++j) rrow[j] += aik * brow[j];
        }
    }
    return r;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
}

double Matrix::trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) s += (*this)(i, i);
    return s;
}

namespace {

// LU with partial pivoting, in place. Returns the pivot sign, fills perm.
// Throws SingularError when a pivot is exactly zero.
double lu_decompose(Matrix& m, std::vector<std::size_t>& perm) {
    const std::size_t n = m.rows();
    perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    double sign = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::fabs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::fabs(m(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) throw SingularError("LU: zero pivot");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            std::swap(perm[k], perm[piv]);
            sign = -sign;
        }
        const double d = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = m(i, k) / d;
            m(i, k) = l;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
        }
    }
    return sign;
}

}  // namespace

double Matrix::determinant() const {
    if (!square()) throw DimensionError("determinant: matrix not square");
    if (rows_ == 0) return 1.0;
    if (rows_ == 1) return a_[0];
    if (rows_ == 2) return a_[0] * a_[3] - a_[1] * a_[2];
    Matrix lu = *this;
    std::vector<std::size_t> perm;
    double det;
    try {
        det = lu_decompose(lu, perm);
    } catch (const SingularError&) {
        return 0.0;
    }
    for (std::size_t i = 0; i < rows_; ++i) det *= lu(i, i);
    return det;
}

Matrix Matrix::inverse() const {
    if (!square()) throw DimensionError("inverse: matrix not square");
    const std::size_t n = rows_;
    Matrix lu = *this;
    std::vector<std::size_t> perm;
    lu_decompose(lu, perm);
    Matrix inv(n, n);
    std::vector<double> col(n);
    for (std::size_t c = 0; c < n; ++c) {
        // forward substitution on the permuted unit vector
        for (std::size_t i = 0; i < n; ++i) {
            double s = (perm[i] == c) ? 1.0 : 0.0;
            for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * col[j];
            col[i] = s;
        }
        // back substitution
        for (std::size_t ii = n; ii-- > 0;) {
            double s = col[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= lu(ii, j) * col[j];
            col[ii] = s / lu(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
    }
    return inv;
}

SymMatrix::SymMatrix(const Matrix& m) {
    if (!m.square()) throw DimensionError("SymMatrix: matrix not square");
    n_ = m.rows();
    a_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = 0.5 * (m(i, j) + m(j, i));
            a_[i * n_ + j] = v;
            a_[j * n_ + i] = v;
        }
    }
}

SymMatrix::SymMatrix(std::size_t n, std::vector<double> row_major) : n_(n) {
    if (row_major.size() != n * n)
        throw DimensionError("SymMatrix: entry count does not match dimension");
    a_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = 0.5 * (row_major[i * n + j] + row_major[j * n + i]);
            a_[i * n + j] = v;
            a_[j * n + i] = v;
        }
    }
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) s.a_[i * n + i] = 1.0;
    return s;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
    SymMatrix s(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) s.a_[i * d.size() + i] = d[i];
    return s;
}

void SymMatrix::set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
}

Matrix SymMatrix::to_matrix() const {
    Matrix m(n_, n_);
    m.data() = a_;
    return m;
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
    if (n_ != o.n_) throw DimensionError("SymMatrix +: dimension mismatch");
    SymMatrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
}

SymMatrix SymMatrix::operator-(const SymMatrix& o) const {
    if (n_ != o.n_) throw DimensionError("SymMatrix -: dimension mismatch");
    SymMatrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
    if (n_ != o.n_) throw DimensionError("SymMatrix +=: dimension mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

SymMatrix operator*(double s, const SymMatrix& m) {
    SymMatrix r = m;
    for (double& x : r.a_) x *= s;
    return r;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
}

double SymMatrix::trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += a_[i * n_ + i];
    return s;
}

double SymMatrix::max_abs() const {
    double s = 0.0;
    for (double x : a_) s = std::max(s, std::fabs(x));
    return s;
}

SymMatrix sandwich(const Matrix& s, const SymMatrix& a) {
    if (!s.square() || s.rows() != a.dim())
        throw DimensionError("sandwich: shape mismatch");
    return SymMatrix(s * a.to_matrix() * s.transposed());
}

}  // namespace pdmeans
