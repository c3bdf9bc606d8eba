#pragma once

// Invertible matrices as group elements, plus the PSL coset form.

#include <algorithm>
#include <string>

#include "ratreal/group.hpp"
#include "ratreal/matrix.hpp"

namespace ratreal {

template <ExactField T>
class MatrixElement {
 public:
  explicit MatrixElement(Matrix<T> m) : m_(std::move(m)) {
    require_square(m_, "MatrixElement");
    if (determinant(m_).is_zero()) throw SingularMatrixError("MatrixElement must be invertible");
  }

  static MatrixElement identity(std::size_t n) { return MatrixElement(Matrix<T>::identity(n), Trusted{}); }

  const Matrix<T>& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }

  MatrixElement inverse() const { return MatrixElement(ratreal::inverse(m_), Trusted{}); }
  std::string key() const { return m_.to_string(); }

  friend MatrixElement operator*(const MatrixElement& a, const MatrixElement& b) {
    return MatrixElement(a.m_ * b.m_, Trusted{});
  }
  friend bool operator==(const MatrixElement&, const MatrixElement&) = default;

 private:
  struct Trusted {};
  MatrixElement(Matrix<T> m, Trusted) : m_(std::move(m)) {}

  Matrix<T> m_;
};

/// Coset {A, -A} of PSL(n), stored as the member whose row-major entry
/// sequence is lexicographically smallest.
template <ExactField T>
  requires std::totally_ordered<T>
class ProjectiveElement {
 public:
  explicit ProjectiveElement(Matrix<T> m) : m_(canonical(MatrixElement<T>(std::move(m)).matrix())) {}

  const Matrix<T>& matrix() const { return m_; }

  ProjectiveElement inverse() const { return ProjectiveElement(ratreal::inverse(m_)); }
  std::string key() const { return m_.to_string(); }

  friend ProjectiveElement operator*(const ProjectiveElement& a, const ProjectiveElement& b) {
    return ProjectiveElement(a.m_ * b.m_);
  }
  friend bool operator==(const ProjectiveElement&, const ProjectiveElement&) = default;

 private:
  static Matrix<T> canonical(const Matrix<T>& m) {
    Matrix<T> neg = -m;
    auto a = m.entries();
    auto b = neg.entries();
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end()) ? neg : m;
  }

  Matrix<T> m_;
};

}  // namespace ratreal
