#pragma once

#include <string>

#include "ratreal/matrix.hpp"

namespace ratreal {

/// The affine map v -> A v + b, i.e. the block matrix [[A, b], [0, 1]].
/// Product: (A, b)(C, d) = (A C, A d + b).
template <ExactField T>
class AffineElement {
 public:
  AffineElement(Matrix<T> linear, Vector<T> translation)
      : linear_(std::move(linear)), translation_(std::move(translation)) {
    require_square(linear_, "AffineElement");
    if (translation_.dim() != linear_.rows()) throw UsageError("AffineElement: translation dimension mismatch");
    if (determinant(linear_).is_zero()) throw SingularMatrixError("AffineElement: linear part must be invertible");
  }

  static AffineElement identity(std::size_t n) {
    return AffineElement(Matrix<T>::identity(n), Vector<T>(n), Trusted{});
  }
  static AffineElement translation_only(Vector<T> b) {
    const std::size_t n = b.dim();
    return AffineElement(Matrix<T>::identity(n), std::move(b), Trusted{});
  }
  static AffineElement linear_only(Matrix<T> a) {
    const std::size_t n = a.rows();
    return AffineElement(std::move(a), Vector<T>(n));
  }

  const Matrix<T>& linear() const { return linear_; }
  const Vector<T>& translation() const { return translation_; }
  std::size_t dim() const { return linear_.rows(); }

  AffineElement inverse() const {
    Matrix<T> inv = ratreal::inverse(linear_);
    return AffineElement(inv, -(inv * translation_), Trusted{});
  }

  Vector<T> apply(const Vector<T>& v) const { return linear_ * v + translation_; }

  Matrix<T> block_matrix() const {
    const std::size_t n = dim();
    Matrix<T> m(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = linear_(i, j);
      m(i, n) = translation_[i];
    }
    m(n, n) = T(1);
    return m;
  }

  std::string key() const { return linear_.to_string() + "|" + translation_.to_string(); }

  friend AffineElement operator*(const AffineElement& a, const AffineElement& b) {
    return AffineElement(a.linear_ * b.linear_, a.linear_ * b.translation_ + a.translation_, Trusted{});
  }
  friend bool operator==(const AffineElement&, const AffineElement&) = default;

 private:
  struct Trusted {};
  AffineElement(Matrix<T> linear, Vector<T> translation, Trusted)
      : linear_(std::move(linear)), translation_(std::move(translation)) {}

  Matrix<T> linear_;
  Vector<T> translation_;
};

}  // namespace ratreal
