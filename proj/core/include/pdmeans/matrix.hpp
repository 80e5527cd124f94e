#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace pdmeans {

/// Dense real matrix, row-major storage. Sized for the small dense
/// problems this library targets (n up to a few hundred).
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const std::vector<double>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    Matrix transposed() const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    friend Matrix operator*(double s, const Matrix& m);

    double frobenius_norm() const;
    double trace() const;

    /// Determinant by LU with partial pivoting.
    double determinant() const;
    /// Inverse by LU with partial pivoting; throws SingularError if a
    /// pivot vanishes.
    Matrix inverse() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

/// Real symmetric matrix. Construction symmetrizes the input exactly,
/// (M + M^T)/2, and stores the result; entries(i,j) == entries(j,i)
/// thereafter.
class SymMatrix {
  public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
    /// Symmetrize a square matrix.
    explicit SymMatrix(const Matrix& m);
    SymMatrix(std::size_t n, std::vector<double> row_major);

    static SymMatrix identity(std::size_t n);
    static SymMatrix diagonal(const std::vector<double>& d);

    std::size_t dim() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    /// Sets entries (i,j) and (j,i).
    void set(std::size_t i, std::size_t j, double v);

    const std::vector<double>& data() const { return a_; }
    Matrix to_matrix() const;

    SymMatrix operator+(const SymMatrix& o) const;
    SymMatrix operator-(const SymMatrix& o) const;
    SymMatrix& operator+=(const SymMatrix& o);
    friend SymMatrix operator*(double s, const SymMatrix& m);

    double frobenius_norm() const;
    double trace() const;
    double max_abs() const;

  private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// Symmetrized triple product S A S^T for general S.
SymMatrix sandwich(const Matrix& s, const SymMatrix& a);

}  // namespace pdmeans
