#pragma once

// Dense exact vectors and matrices plus the Gaussian-elimination toolkit the
// conjugator solvers are built on.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ratreal/errors.hpp"
#include "ratreal/scalar.hpp"

namespace ratreal {

template <ExactField T>
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : entries_(dim, T{}) {}
  Vector(std::initializer_list<T> entries) : entries_(entries) {}
  explicit Vector(std::vector<T> entries) : entries_(std::move(entries)) {}

  static Vector zero(std::size_t dim) { return Vector(dim); }
  static Vector unit(std::size_t dim, std::size_t i) {
    Vector v(dim);
    v[i] = T(1);
    return v;
  }

  std::size_t dim() const { return entries_.size(); }
  T& operator[](std::size_t i) { return entries_[i]; }
  const T& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const T> entries() const { return entries_; }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  friend Vector operator+(const Vector& a, const Vector& b) {
    check_same(a, b);
    Vector r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
    return r;
  }
  friend Vector operator-(const Vector& a, const Vector& b) {
    check_same(a, b);
    Vector r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
    return r;
  }
  Vector operator-() const {
    Vector r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = -entries_[i];
    return r;
  }
  friend Vector operator*(const T& s, const Vector& v) {
    Vector r(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) r[i] = s * v[i];
    return r;
  }

  friend bool operator==(const Vector&, const Vector&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < dim(); ++i) s += (i ? ", " : "") + entries_[i].to_string();
    return s + ")";
  }

 private:
  static void check_same(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw UsageError("vector dimension mismatch");
  }

  std::vector<T> entries_;
};

/// Row-major dense matrix. Zero-sized matrices are allowed (empty blocks).
template <ExactField T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, T{}) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw UsageError("ragged matrix literal");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) throw UsageError("entry count does not match shape");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(std::size_t rows, const std::vector<Vector<T>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].dim() != rows) throw UsageError("column dimension mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  std::span<const T> entries() const { return entries_; }

  Vector<T> column(std::size_t j) const {
    Vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows [r0, r0+nr) x cols [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw UsageError("block out of range");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) r.entries_[i] = a.entries_[i] + b.entries_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) r.entries_[i] = a.entries_[i] - b.entries_[i];
    return r;
  }
  Matrix operator-() const {
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = -entries_[i];
    return r;
  }
  friend Matrix operator*(const T& s, const Matrix& m) {
    Matrix r(m.rows_, m.cols_);
    for (std::size_t i = 0; i < m.entries_.size(); ++i) r.entries_[i] = s * m.entries_[i];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw UsageError("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + aik * b(k, j);
      }
    return r;
  }
  friend Vector<T> operator*(const Matrix& a, const Vector<T>& v) {
    if (a.cols_ != v.dim()) throw UsageError("matrix-vector shape mismatch");
    Vector<T> r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      T acc{};
      for (std::size_t j = 0; j < a.cols_; ++j) acc = acc + a(i, j) * v[j];
      r[i] = acc;
    }
    return r;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_string();
      s += "]";
    }
    return s + "]";
  }

 private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw UsageError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

template <ExactField T>
void require_square(const Matrix<T>& a, const char* what) {
  if (!a.is_square()) throw UsageError(std::string(what) + " requires a square matrix");
}

/// Reduced row echelon form. Pivots are the first nonzero entry in column
/// order; exact fields need no magnitude heuristics.
template <ExactField T>
struct RowEchelon {
  Matrix<T> reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

template <ExactField T>
RowEchelon<T> row_reduce(Matrix<T> m) {
  RowEchelon<T> out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    T inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      T f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <ExactField T>
std::size_t rank(const Matrix<T>& a) {
  return row_reduce(a).rank();
}

/// Null space basis of any rectangular matrix; one vector per free column.
template <ExactField T>
std::vector<Vector<T>> nullspace(const Matrix<T>& a) {
  auto ech = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<Vector<T>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<T> v(a.cols());
    v[free] = T(1);
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) v[ech.pivot_cols[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Exact basis of ker(A) for square A; empty iff A is invertible.
template <ExactField T>
std::vector<Vector<T>> kernel_basis(const Matrix<T>& a) {
  require_square(a, "kernel_basis");
  return nullspace(a);
}

/// Basis of the column space, taken from the pivot columns of A itself.
template <ExactField T>
std::vector<Vector<T>> image_basis(const Matrix<T>& a) {
  auto ech = row_reduce(a);
  std::vector<Vector<T>> basis;
  for (auto c : ech.pivot_cols) basis.push_back(a.column(c));
  return basis;
}

/// Solves A w = b. For singular A returns a particular solution (free
/// variables zero) when the system is consistent, nothing otherwise.
template <ExactField T>
std::optional<Vector<T>> solve_linear(const Matrix<T>& a, const Vector<T>& b) {
  require_square(a, "solve_linear");
  if (b.dim() != a.rows()) throw UsageError("solve_linear: right-hand side dimension mismatch");
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto ech = row_reduce(std::move(aug));
  if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == a.cols()) return std::nullopt;
  Vector<T> w(a.cols());
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) w[ech.pivot_cols[r]] = ech.reduced(r, a.cols());
  return w;
}

template <ExactField T>
T determinant(const Matrix<T>& a) {
  require_square(a, "determinant");
  Matrix<T> m = a;
  T det(1);
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col).is_zero()) ++piv;
    if (piv == n) return T{};
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det = det * m(col, col);
    T inv = m(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      T f = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(col, j);
    }
  }
  return det;
}

template <ExactField T>
Matrix<T> inverse(const Matrix<T>& a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  if (n == 0) return a;
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = T(1);
  }
  auto ech = row_reduce(std::move(aug));
  if (ech.rank() < n || ech.pivot_cols[n - 1] != n - 1) throw SingularMatrixError("matrix is singular");
  return ech.reduced.block(0, n, n, n);
}

/// A^k by repeated squaring; negative k goes through the inverse.
template <ExactField T>
Matrix<T> matrix_power(const Matrix<T>& a, long k) {
  require_square(a, "matrix_power");
  if (k < 0) return matrix_power(inverse(a), -k);
  Matrix<T> result = Matrix<T>::identity(a.rows());
  Matrix<T> base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

/// True iff 1 is an eigenvalue, i.e. some nonzero v has A v = v.
template <ExactField T>
bool has_fixed_point(const Matrix<T>& a) {
  require_square(a, "has_fixed_point");
  return !kernel_basis(Matrix<T>(a - Matrix<T>::identity(a.rows()))).empty();
}

/// Direct sum diag(a, b).
template <ExactField T>
Matrix<T> block_diagonal(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

}  // namespace ratreal
