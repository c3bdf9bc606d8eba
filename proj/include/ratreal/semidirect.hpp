#pragma once

// Semidirect products H x| N and constructive conjugators.
//
// Two coordinate systems appear here. AffineElement (A, b) is the block
// matrix [[A, b], [0, 1]], which is the product t_b * A. SemidirectElement
// (h, n) is the product h * n. For a vector group with h acting by its
// matrix the two agree under (h, v) <-> (h, h v).

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ratreal/affine.hpp"
#include "ratreal/group.hpp"
#include "ratreal/matrix.hpp"
#include "ratreal/matrix_group.hpp"

namespace ratreal {

/// Raised when an operator that must be fixed-point-free fixes a nonzero
/// vector. level is -1 for a plain vector group.
template <ExactField T>
class FixedPointError : public PreconditionError {
 public:
  FixedPointError(int level, std::vector<Vector<T>> kernel)
      : PreconditionError(describe(level, kernel)), level_(level), kernel_(std::move(kernel)) {}

  int level() const { return level_; }
  const std::vector<Vector<T>>& kernel() const { return kernel_; }

 private:
  static std::string describe(int level, const std::vector<Vector<T>>& kernel) {
    std::string s = "action has a nonzero fixed point";
    if (level >= 0) s += " at level " + std::to_string(level);
    s += "; kernel basis:";
    for (const auto& v : kernel) s += " " + v.to_string();
    return s;
  }

  int level_;
  std::vector<Vector<T>> kernel_;
};

template <ExactField T>
void require_fixed_point_free(const Matrix<T>& x, int level = -1) {
  auto kernel = kernel_basis(Matrix<T>(x - Matrix<T>::identity(x.rows())));
  if (!kernel.empty()) throw FixedPointError<T>(level, std::move(kernel));
}

/// A vector space viewed as a group under addition.
template <ExactField T>
class VectorGroupElement {
 public:
  explicit VectorGroupElement(Vector<T> v) : v_(std::move(v)) {}
  static VectorGroupElement zero(std::size_t n) { return VectorGroupElement(Vector<T>(n)); }

  const Vector<T>& vector() const { return v_; }

  VectorGroupElement inverse() const { return VectorGroupElement(-v_); }
  std::string key() const { return v_.to_string(); }

  friend VectorGroupElement operator*(const VectorGroupElement& a, const VectorGroupElement& b) {
    return VectorGroupElement(a.v_ + b.v_);
  }
  friend bool operator==(const VectorGroupElement&, const VectorGroupElement&) = default;

 private:
  Vector<T> v_;
};

/// An action is a stateless type with static N apply(const H&, const N&)
/// computing the conjugate h n h^-1.
template <class A, class H, class N>
concept ConjugationAction = requires(const H& h, const N& n) {
  { A::apply(h, n) } -> std::convertible_to<N>;
};

/// h * n in H x| N. Product (h1, n1)(h2, n2) = (h1 h2, s(h2^-1)(n1) n2)
/// where s(h)(n) = h n h^-1.
template <GroupElement H, GroupElement N, class Action>
  requires ConjugationAction<Action, H, N>
class SemidirectElement {
 public:
  SemidirectElement(H h, N n) : h_(std::move(h)), n_(std::move(n)) {}

  const H& acting() const { return h_; }
  const N& normal() const { return n_; }

  SemidirectElement inverse() const {
    return SemidirectElement(h_.inverse(), Action::apply(h_, n_.inverse()));
  }
  std::string key() const { return h_.key() + "|" + n_.key(); }

  friend SemidirectElement operator*(const SemidirectElement& a, const SemidirectElement& b) {
    return SemidirectElement(a.h_ * b.h_, Action::apply(b.h_.inverse(), a.n_) * b.n_);
  }
  friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;

 private:
  H h_;
  N n_;
};

/// GL(n) acting on F^n by matrix multiplication.
template <ExactField T>
struct MatrixVectorAction {
  static VectorGroupElement<T> apply(const MatrixElement<T>& h, const VectorGroupElement<T>& n) {
    return VectorGroupElement<T>(h.matrix() * n.vector());
  }
};

/// (h, v) in the h*n coordinates -> the affine pair (h, h v).
template <ExactField T>
AffineElement<T> to_affine(const SemidirectElement<MatrixElement<T>, VectorGroupElement<T>, MatrixVectorAction<T>>& g) {
  return AffineElement<T>(g.acting().matrix(), g.acting().matrix() * g.normal().vector());
}

/// One quotient N_j / N_{j+1} of a central series, with the F-linear data the
/// lifting algorithm needs. section may be any set-theoretic lift into N_j.
template <class H, class N, ExactField T>
struct SeriesLevel {
  std::size_t dim = 0;
  std::function<bool(const N&)> contains;  // membership in N_j
  std::function<Vector<T>(const N&)> project;
  std::function<N(const Vector<T>&)> section;
  std::function<Matrix<T>(const H&)> act;
};

/// N = N_0 > N_1 > ... > N_r = {e} with per-level projections, sections and
/// quotient actions. The conjugation action of H on N is the type Action.
template <GroupElement H, GroupElement N, class Action, ExactField T>
  requires ConjugationAction<Action, H, N>
struct CentralSeriesPresentation {
  using Element = SemidirectElement<H, N, Action>;

  N identity;
  std::vector<SeriesLevel<H, N, T>> levels;

  std::size_t depth() const { return levels.size(); }
  Element embed(const H& h) const { return Element(h, identity); }
  Element embed_normal(const H& h_identity, const N& n) const { return Element(h_identity, n); }
};

/// The single-level presentation of F^n under GL(n).
template <ExactField T>
CentralSeriesPresentation<MatrixElement<T>, VectorGroupElement<T>, MatrixVectorAction<T>, T> vector_group_presentation(
    std::size_t n) {
  using H = MatrixElement<T>;
  using N = VectorGroupElement<T>;
  SeriesLevel<H, N, T> level;
  level.dim = n;
  level.contains = [](const N&) { return true; };
  level.project = [](const N& v) { return v.vector(); };
  level.section = [](const Vector<T>& v) { return N(v); };
  level.act = [](const H& h) { return h.matrix(); };
  return {N::zero(n), {level}};
}

/// The unique w with (I, w)(x, b)(I, w)^-1 = (x, 0), i.e. (x - I) w = b.
template <ExactField T>
Vector<T> reduce_translation(const Matrix<T>& x, const Vector<T>& b) {
  require_square(x, "reduce_translation");
  if (b.dim() != x.rows()) throw UsageError("reduce_translation: dimension mismatch");
  require_fixed_point_free(x);
  auto w = solve_linear(Matrix<T>(x - Matrix<T>::identity(x.rows())), b);
  if (!w) throw ConsistencyError("reduce_translation: invertible system reported inconsistent");
  const auto c = AffineElement<T>::translation_only(*w);
  if (conjugate(c, AffineElement<T>(x, b)) != AffineElement<T>::linear_only(x))
    throw VerificationError("reduce_translation: conjugate is not (x, 0)");
  return *w;
}

namespace detail {
template <ExactField T>
Certificate<AffineElement<T>> affine_witness(const Matrix<T>& x, const Vector<T>& b, const Matrix<T>& h,
                                             Relation relation) {
  const AffineElement<T> subject(x, b);
  const auto c = AffineElement<T>::translation_only(reduce_translation(x, b));
  const auto g = c.inverse() * AffineElement<T>::linear_only(h) * c;
  return Certificate<AffineElement<T>>::make(subject, g, relation);
}
}  // namespace detail

/// Certificate for (x, b) ~ (x, b)^-1 from a reality witness h of x.
template <ExactField T>
Certificate<AffineElement<T>> make_real_witness(const Matrix<T>& x, const Vector<T>& b, const Matrix<T>& h) {
  if (h * x * inverse(h) != inverse(x)) throw PreconditionError("make_real_witness: h does not conjugate x to x^-1");
  return detail::affine_witness(x, b, h, Relation::inverse());
}

/// Certificate for (x, b) ~ (x, b)^k from h with h x h^-1 = x^k. Also checks
/// that Ord((x, b)) divides Ord(x) whenever the latter is finite.
template <ExactField T>
Certificate<AffineElement<T>> make_power_witness(const Matrix<T>& x, const Vector<T>& b, const Matrix<T>& h, long k,
                                                 long order_bound = kDefaultOrderBound) {
  if (h * x * inverse(h) != matrix_power(x, k))
    throw PreconditionError("make_power_witness: h does not conjugate x to x^" + std::to_string(k));
  auto cert = detail::affine_witness(x, b, h, Relation::power(k));
  const auto order = element_order(MatrixElement<T>(x), order_bound);
  if (order.is_finite() && group_power(cert.subject(), order.value()) != AffineElement<T>::identity(x.rows()))
    throw VerificationError("make_power_witness: Ord((x, b)) does not divide Ord(x)");
  return cert;
}

/// Finds u in N with u x u^-1 = x n, level by level: at level j the class of
/// the residual is killed by a section of the unique solution of
/// (act_j(x)^-1 - I) w = project_j(residual), and the residual descends to
/// N_{j+1}. u is the product w_0 w_1 ... w_{r-1}.
template <GroupElement H, GroupElement N, class Action, ExactField T>
N lift_central_series(const H& x, const N& n, const CentralSeriesPresentation<H, N, Action, T>& p) {
  using Element = SemidirectElement<H, N, Action>;
  std::vector<Matrix<T>> acts;
  for (std::size_t j = 0; j < p.depth(); ++j) {
    acts.push_back(p.levels[j].act(x));
    require_fixed_point_free(acts.back(), static_cast<int>(j));
  }

  N residual = n;
  N u = p.identity;
  const H x_inv = x.inverse();
  for (std::size_t j = 0; j < p.depth(); ++j) {
    const auto& level = p.levels[j];
    if (!level.contains(residual))
      throw ConsistencyError("residual did not descend into level " + std::to_string(j));
    const auto system = Matrix<T>(inverse(acts[j]) - Matrix<T>::identity(level.dim));
    auto w_bar = solve_linear(system, level.project(residual));
    if (!w_bar) throw ConsistencyError("level " + std::to_string(j) + " system inconsistent");
    const N w = level.section(*w_bar);
    residual = Action::apply(x_inv, w.inverse()) * residual * w;
    if (!level.project(residual).is_zero())
      throw ConsistencyError("residual still nonzero at level " + std::to_string(j) + " after the step");
    u = u * w;
  }
  if (residual != p.identity) throw ConsistencyError("residual is not the identity after the last level");

  const H e_h = identity_of(x);
  if (conjugate(Element(e_h, u), Element(x, p.identity)) != Element(x, n))
    throw VerificationError("lift_central_series: u x u^-1 != x n");
  return u;
}

namespace detail {
template <GroupElement H, GroupElement N, class Action, ExactField T>
Certificate<SemidirectElement<H, N, Action>> lifted_witness(const H& x, const N& n, const H& h,
                                                            const CentralSeriesPresentation<H, N, Action, T>& p,
                                                            Relation relation) {
  using Element = SemidirectElement<H, N, Action>;
  const N u = lift_central_series(x, n, p);
  const Element lift(identity_of(x), u);
  const Element g = lift * Element(h, p.identity) * lift.inverse();
  return Certificate<Element>::make(Element(x, n), g, relation);
}
}  // namespace detail

/// Certificate for x n ~ (x n)^-1 in H x| N from h with h x h^-1 = x^-1 in H.
template <GroupElement H, GroupElement N, class Action, ExactField T>
Certificate<SemidirectElement<H, N, Action>> real_witness_via_lift(const H& x, const N& n,
                                                                   const CentralSeriesPresentation<H, N, Action, T>& p,
                                                                   const H& h) {
  if (conjugate(h, x) != x.inverse()) throw PreconditionError("real_witness_via_lift: h is not a reality witness");
  return detail::lifted_witness(x, n, h, p, Relation::inverse());
}

/// Certificate for x n ~ (x n)^k from h with h x h^-1 = x^k.
template <GroupElement H, GroupElement N, class Action, ExactField T>
Certificate<SemidirectElement<H, N, Action>> rational_witness_via_lift(
    const H& x, const N& n, const CentralSeriesPresentation<H, N, Action, T>& p, const H& h, long k) {
  if (conjugate(h, x) != group_power(x, k))
    throw PreconditionError("rational_witness_via_lift: h does not conjugate x to x^" + std::to_string(k));
  return detail::lifted_witness(x, n, h, p, Relation::power(k));
}

}  // namespace ratreal
