#pragma once

// Conformance checks for abelian-by-nilpotent groups G = A x| N, and the
// complex Heisenberg group under C^x.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ratreal/affine.hpp"
#include "ratreal/group.hpp"
#include "ratreal/heisenberg.hpp"
#include "ratreal/matrix.hpp"
#include "ratreal/matrix_group.hpp"
#include "ratreal/scalar.hpp"
#include "ratreal/semidirect.hpp"

namespace ratreal {

/// A conjugacy relation that the structure theory forbids was observed.
class TheoremViolation : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

template <GroupElement G>
using WitnessSearch = std::function<std::optional<G>(const G&)>;

/// Witness search over an explicit candidate list; returns the first g with
/// g s g^-1 = s^-1.
template <GroupElement G>
WitnessSearch<G> search_among(std::vector<G> candidates) {
  return [candidates = std::move(candidates)](const G& s) -> std::optional<G> {
    const G target = s.inverse();
    for (const auto& g : candidates)
      if (conjugate(g, s) == target) return g;
    return std::nullopt;
  };
}

struct SquareLawOutcome {
  bool witness_found = false;
  bool square_is_identity = false;
};

/// x in A, with A abelian (checked on a_samples). If the search finds any g
/// with g x g^-1 = x^-1, then x^2 = e must hold: x^2 lands in A and in N.
/// Nothing is claimed when no witness is found.
template <GroupElement G>
SquareLawOutcome check_square_law(const G& x, const std::vector<G>& a_samples, const WitnessSearch<G>& search) {
  for (const auto& a : a_samples)
    for (const auto& b : a_samples)
      if (a * b != b * a) throw PreconditionError("check_square_law: sampled A is not abelian");
  SquareLawOutcome out;
  const G e = identity_of(x);
  out.square_is_identity = x * x == e;
  if (auto g = search(x)) {
    Certificate<G>::make(x, *g, Relation::inverse());
    out.witness_found = true;
    if (!out.square_is_identity) throw TheoremViolation("check_square_law: real element of A with x^2 != e");
  }
  return out;
}

/// For x with x^2 = e acting without fixed points on every quotient of the
/// series, x n equals its own inverse. Returns the lifted certificate.
template <GroupElement H, GroupElement N, class Action, ExactField T>
Certificate<SemidirectElement<H, N, Action>> check_strong_reality(const H& x, const N& n,
                                                                  const CentralSeriesPresentation<H, N, Action, T>& p,
                                                                  const H& h) {
  using Element = SemidirectElement<H, N, Action>;
  if (x * x != identity_of(x)) throw PreconditionError("check_strong_reality: x^2 != e");
  auto cert = real_witness_via_lift(x, n, p, h);
  const Element xn(x, n);
  if (xn * xn != Element(identity_of(x), p.identity))
    throw TheoremViolation("check_strong_reality: (x n)^2 != e under the hypotheses");
  return cert;
}

struct CenterRigidityOutcome {
  bool involution = false;  // n == n^-1
  std::size_t candidates_checked = 0;
};

/// n central in N, A acting trivially on Z(N): A Z(N) is abelian, so n is
/// real there only if n = n^-1, which over Q means n = e.
template <GroupElement G>
CenterRigidityOutcome check_center_rigidity(const G& n, const std::vector<G>& a_samples,
                                            const std::vector<G>& a_z_candidates) {
  if (n == identity_of(n)) throw PreconditionError("check_center_rigidity: n must be nontrivial");
  for (const auto& a : a_samples)
    if (conjugate(a, n) != n) throw PreconditionError("check_center_rigidity: A does not act trivially on n");
  CenterRigidityOutcome out;
  out.involution = n == n.inverse();
  if (out.involution) throw TheoremViolation("check_center_rigidity: nontrivial central n with n = n^-1");
  for (const auto& g : a_z_candidates) {
    ++out.candidates_checked;
    if (conjugate(g, n) == n.inverse()) throw TheoremViolation("check_center_rigidity: witness found in A Z(N)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixtures

/// Points of the circle with rational coordinates, (1 - u^2, 2u) / (1 + u^2).
inline Matrix<Rational> rational_rotation(const Rational& u) {
  const Rational den = Rational(1) + u * u;
  const Rational c = (Rational(1) - u * u) / den, s = Rational(2) * u / den;
  return {{c, -s}, {s, c}};
}

/// The rotation instance: R acting on Q^2 through R^2, embedded as
/// [[R^2, v, 0], [0, 1, 0], [0, 0, R]] in GL(5).
inline MatrixElement<Rational> rotation_instance(const Matrix<Rational>& r, const Vector<Rational>& v) {
  const Matrix<Rational> r2 = r * r;
  Matrix<Rational> m(5, 5);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      m(i, j) = r2(i, j);
      m(3 + i, 3 + j) = r(i, j);
    }
    m(i, 2) = v[i];
  }
  m(2, 2) = 1;
  return MatrixElement<Rational>(m);
}

/// Torus diag(s, 1/s) acting on the three-dimensional Heisenberg group,
/// trivially on its center.
inline GSpHeisenbergElement torus_heisenberg(const Rational& s, const Vector<Rational>& v, const Rational& t) {
  return {GSpElement(Matrix<Rational>::diagonal({s, s.inverse()})), HeisenbergElement(v, t)};
}

/// Q^3 > span(e3) > 0 with the linear action: a two-step presentation of an
/// abelian N.
inline CentralSeriesPresentation<MatrixElement<Rational>, VectorGroupElement<Rational>, MatrixVectorAction<Rational>,
                                 Rational>
flag_presentation_q3() {
  using H = MatrixElement<Rational>;
  using N = VectorGroupElement<Rational>;
  SeriesLevel<H, N, Rational> top;
  top.dim = 2;
  top.contains = [](const N&) { return true; };
  top.project = [](const N& n) { return Vector<Rational>{n.vector()[0], n.vector()[1]}; };
  top.section = [](const Vector<Rational>& w) { return N(Vector<Rational>{w[0], w[1], 0}); };
  top.act = [](const H& h) { return h.matrix().block(0, 0, 2, 2); };
  SeriesLevel<H, N, Rational> bottom;
  bottom.dim = 1;
  bottom.contains = [](const N& n) { return n.vector()[0].is_zero() && n.vector()[1].is_zero(); };
  bottom.project = [](const N& n) { return Vector<Rational>{n.vector()[2]}; };
  bottom.section = [](const Vector<Rational>& w) { return N(Vector<Rational>{0, 0, w[0]}); };
  bottom.act = [](const H& h) { return h.matrix().block(2, 2, 1, 1); };
  return {N::zero(3), {top, bottom}};
}

// ---------------------------------------------------------------------------
// Complex Heisenberg group

/// [[1, a, c], [0, 1, b], [0, 0, 1]] over Q(i).
class ComplexHeisenbergElement {
 public:
  ComplexHeisenbergElement(GaussianRational a, GaussianRational b, GaussianRational c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}
  static ComplexHeisenbergElement identity() { return {{}, {}, {}}; }

  const GaussianRational& a() const { return a_; }
  const GaussianRational& b() const { return b_; }
  const GaussianRational& c() const { return c_; }

  ComplexHeisenbergElement inverse() const { return {-a_, -b_, a_ * b_ - c_}; }
  std::string key() const { return a_.to_string() + "," + b_.to_string() + "," + c_.to_string(); }

  friend ComplexHeisenbergElement operator*(const ComplexHeisenbergElement& x, const ComplexHeisenbergElement& y) {
    return {x.a_ + y.a_, x.b_ + y.b_, x.c_ + y.c_ + x.a_ * y.b_};
  }
  friend bool operator==(const ComplexHeisenbergElement&, const ComplexHeisenbergElement&) = default;

 private:
  GaussianRational a_, b_, c_;
};

/// A nonzero scalar under multiplication.
template <ExactField T>
class UnitElement {
 public:
  explicit UnitElement(T value) : value_(std::move(value)) {
    if (value_.is_zero()) throw UsageError("UnitElement: zero is not a unit");
  }
  const T& value() const { return value_; }
  UnitElement inverse() const { return UnitElement(value_.inverse()); }
  std::string key() const { return value_.to_string(); }
  friend UnitElement operator*(const UnitElement& x, const UnitElement& y) { return UnitElement(x.value_ * y.value_); }
  friend bool operator==(const UnitElement&, const UnitElement&) = default;

 private:
  T value_;
};

/// lambda . (a, b, c) = (lambda a, b / lambda, c)
struct ScalingAction {
  static ComplexHeisenbergElement apply(const UnitElement<GaussianRational>& l, const ComplexHeisenbergElement& n) {
    return {l.value() * n.a(), n.b() / l.value(), n.c()};
  }
};

using ComplexHeisenbergSemidirect = SemidirectElement<UnitElement<GaussianRational>, ComplexHeisenbergElement, ScalingAction>;

struct ComplexHeisenbergVerdict {
  bool real = false;
  std::optional<Certificate<ComplexHeisenbergSemidirect>> certificate;
  /// x = -1: the c-coordinate mismatch 2c - ab left after the a and b
  /// coordinates force the conjugator; x = 1: -2c when a = b = 0.
  GaussianRational residual;
  std::string reason;
};

namespace detail {
inline ComplexHeisenbergSemidirect chs(const GaussianRational& lambda, const ComplexHeisenbergElement& n) {
  return {UnitElement<GaussianRational>(lambda), n};
}
}  // namespace detail

/// Reality of (x, n) for x = 1 or x = -1 in C^x x| H_3(C). For x = -1 the
/// conjugator (k, lambda) with k = (p, q, 0) is forced by the first two
/// coordinates for each lambda; the remaining coordinate differs by 2c - ab
/// independently of lambda, which is checked on lambda_grid as well.
inline ComplexHeisenbergVerdict complex_heisenberg_reality(const ComplexHeisenbergElement& n, int x,
                                                           const GaussianRational& lambda = GaussianRational(1),
                                                           const std::vector<GaussianRational>& lambda_grid = {}) {
  if (x != 1 && x != -1) throw UsageError("complex_heisenberg_reality: x must be 1 or -1");
  if (lambda.is_zero()) throw UsageError("complex_heisenberg_reality: lambda must be nonzero");
  using N = ComplexHeisenbergElement;
  const GaussianRational one(1), two(2);
  const GaussianRational ab = n.a() * n.b();
  const auto subject = detail::chs(GaussianRational(x), n);
  ComplexHeisenbergVerdict out;

  if (x == 1) {
    if (n.a().is_zero() && n.b().is_zero()) {
      out.residual = -(two * n.c());
      out.reason = n.c().is_zero() ? "identity" : "central n: every conjugator fixes c, and c != -c";
      out.real = n.c().is_zero();
      if (out.real) out.certificate = Certificate<ComplexHeisenbergSemidirect>::make(subject, subject, Relation::inverse());
      return out;
    }
    // (e, m)(-1, e) with m = (0, (ab - 2c)/a, 0) or ((2c - ab)/b, 0, 0)
    const N m = !n.a().is_zero() ? N({}, (ab - two * n.c()) / n.a(), {}) : N((two * n.c() - ab) / n.b(), {}, {});
    const auto g = detail::chs(one, m) * detail::chs(-one, N::identity());
    out.certificate = Certificate<ComplexHeisenbergSemidirect>::make(subject, g, Relation::inverse());
    out.real = true;
    out.reason = "conjugator (m, -1)";
    return out;
  }

  auto forced = [&](const GaussianRational& l) {
    const N k((l * n.a() - n.a()) / two, (n.b() / l - n.b()) / two, {});
    return detail::chs(one, k) * detail::chs(l, N::identity());
  };
  out.residual = two * n.c() - ab;
  for (const auto& l : lambda_grid) {
    const auto g = forced(l);
    const auto lhs = conjugate(g, subject), rhs = subject.inverse();
    if (lhs.acting() != rhs.acting() || lhs.normal().a() != rhs.normal().a() || lhs.normal().b() != rhs.normal().b())
      throw ConsistencyError("forced conjugator does not match the first two coordinates");
    if (lhs.normal().c() - rhs.normal().c() != out.residual)
      throw ConsistencyError("c-coordinate mismatch depends on lambda");
  }
  out.real = out.residual.is_zero();
  if (out.real) {
    out.certificate = Certificate<ComplexHeisenbergSemidirect>::make(subject, forced(lambda), Relation::inverse());
    out.reason = "ab = 2c: (-1, n) has order dividing two";
  } else {
    out.reason = "ab != 2c: the c-coordinate differs by 2c - ab = " + out.residual.to_string() + " for every lambda";
  }
  return out;
}

}  // namespace ratreal
