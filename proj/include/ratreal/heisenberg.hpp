#pragma once

// The Heisenberg group on Q^{2d} x Q and the similitude group acting on it.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ratreal/group.hpp"
#include "ratreal/matrix.hpp"
#include "ratreal/scalar.hpp"
#include "ratreal/semidirect.hpp"

namespace ratreal {

/// [[0, I_d], [-I_d, 0]]
inline Matrix<Rational> symplectic_form(std::size_t dim) {
  if (dim % 2 != 0) throw UsageError("symplectic form needs even dimension");
  const std::size_t d = dim / 2;
  Matrix<Rational> j(dim, dim);
  for (std::size_t i = 0; i < d; ++i) {
    j(i, d + i) = 1;
    j(d + i, i) = -1;
  }
  return j;
}

inline Rational omega(const Vector<Rational>& v, const Vector<Rational>& w) {
  const std::size_t d = v.dim() / 2;
  Rational acc;
  for (std::size_t i = 0; i < d; ++i) acc += v[i] * w[d + i] - v[d + i] * w[i];
  return acc;
}

/// (v, t)(v', t') = (v + v', t + t' + omega(v, v') / 2)
class HeisenbergElement {
 public:
  HeisenbergElement(Vector<Rational> v, Rational t) : v_(std::move(v)), t_(std::move(t)) {
    if (v_.dim() == 0 || v_.dim() % 2 != 0) throw UsageError("HeisenbergElement: v must have even positive dimension");
  }
  static HeisenbergElement identity(std::size_t dim) { return {Vector<Rational>(dim), Rational(0)}; }
  static HeisenbergElement central(std::size_t dim, Rational t) { return {Vector<Rational>(dim), std::move(t)}; }

  const Vector<Rational>& v() const { return v_; }
  const Rational& t() const { return t_; }
  std::size_t dim() const { return v_.dim(); }

  HeisenbergElement inverse() const { return {-v_, -t_}; }
  std::string key() const { return v_.to_string() + "|" + t_.to_string(); }

  friend HeisenbergElement operator*(const HeisenbergElement& a, const HeisenbergElement& b) {
    if (a.dim() != b.dim()) throw UsageError("HeisenbergElement: dimension mismatch");
    return {a.v_ + b.v_, a.t_ + b.t_ + Rational(1, 2) * omega(a.v_, b.v_)};
  }
  friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;

 private:
  Vector<Rational> v_;
  Rational t_;
};

/// g with g^T J g = mu J, mu != 0.
class GSpElement {
 public:
  explicit GSpElement(Matrix<Rational> g) : g_(std::move(g)) {
    require_square(g_, "GSpElement");
    const std::size_t d = g_.rows() / 2;
    const Matrix<Rational> j = symplectic_form(g_.rows());
    const Matrix<Rational> form = g_.transpose() * j * g_;
    mu_ = form(0, d);
    if (mu_.is_zero() || form != mu_ * j) throw UsageError("GSpElement: g^T J g is not a nonzero multiple of J");
  }
  GSpElement(Matrix<Rational> g, const Rational& mu) : GSpElement(std::move(g)) {
    if (mu != mu_) throw UsageError("GSpElement: similitude factor is " + mu_.to_string() + ", not " + mu.to_string());
  }
  static GSpElement identity(std::size_t dim) { return GSpElement(Matrix<Rational>::identity(dim)); }

  const Matrix<Rational>& matrix() const { return g_; }
  const Rational& mu() const { return mu_; }
  std::size_t dim() const { return g_.rows(); }

  GSpElement inverse() const { return GSpElement(ratreal::inverse(g_), mu_.inverse(), Trusted{}); }
  std::string key() const { return g_.to_string(); }

  friend GSpElement operator*(const GSpElement& a, const GSpElement& b) {
    return GSpElement(a.g_ * b.g_, a.mu_ * b.mu_, Trusted{});
  }
  friend bool operator==(const GSpElement& a, const GSpElement& b) { return a.g_ == b.g_; }

 private:
  struct Trusted {};
  GSpElement(Matrix<Rational> g, Rational mu, Trusted) : g_(std::move(g)), mu_(std::move(mu)) {}

  Matrix<Rational> g_;
  Rational mu_;
};

/// (v, t) -> (g v, mu(g) t)
inline HeisenbergElement gsp_act(const GSpElement& g, const HeisenbergElement& h) {
  return {g.matrix() * h.v(), g.mu() * h.t()};
}

struct GSpHeisenbergAction {
  static HeisenbergElement apply(const GSpElement& g, const HeisenbergElement& h) { return gsp_act(g, h); }
};

using GSpHeisenbergElement = SemidirectElement<GSpElement, HeisenbergElement, GSpHeisenbergAction>;
using HeisenbergPresentation = CentralSeriesPresentation<GSpElement, HeisenbergElement, GSpHeisenbergAction, Rational>;

/// H > Z(H) > {e}: level 0 is H / Z(H) = Q^{2d} acted on by g, level 1 is
/// Z(H) = Q acted on by mu(g).
inline HeisenbergPresentation heisenberg_presentation(std::size_t dim = 4) {
  using H = GSpElement;
  using N = HeisenbergElement;
  SeriesLevel<H, N, Rational> quotient;
  quotient.dim = dim;
  quotient.contains = [](const N&) { return true; };
  quotient.project = [](const N& n) { return n.v(); };
  quotient.section = [](const Vector<Rational>& v) { return N(v, Rational(0)); };
  quotient.act = [](const H& g) { return g.matrix(); };

  SeriesLevel<H, N, Rational> center;
  center.dim = 1;
  center.contains = [](const N& n) { return n.v().is_zero(); };
  center.project = [](const N& n) { return Vector<Rational>{n.t()}; };
  center.section = [dim](const Vector<Rational>& t) { return N::central(dim, t[0]); };
  center.act = [](const H& g) { return Matrix<Rational>{{g.mu()}}; };
  return {N::identity(dim), {quotient, center}};
}

/// P = [[0, 1], [-1, 0]]; x = diag(P, P^-1) has mu = -1 and y = [[0, I], [I, 0]]
/// conjugates it to its inverse.
inline GSpElement gsp_demo_x() {
  return GSpElement(Matrix<Rational>{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}, Rational(-1));
}
inline GSpElement gsp_demo_y() {
  return GSpElement(Matrix<Rational>{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}});
}

struct GspHeisenbergDemo {
  GSpElement x = gsp_demo_x();
  GSpElement h = gsp_demo_y();
  std::vector<Certificate<GSpHeisenbergElement>> certificates;
};

/// Reality certificates for (x, n) over the fixed samples e, ((1,0,0,0), 0),
/// ((1,2,3,4), 5) followed by `samples` seeded random n.
inline GspHeisenbergDemo demo_gsp_heisenberg(std::size_t samples, std::uint64_t seed = 7) {
  GspHeisenbergDemo demo;
  const auto p = heisenberg_presentation(4);
  std::vector<HeisenbergElement> ns{HeisenbergElement::identity(4),
                                    HeisenbergElement(Vector<Rational>{1, 0, 0, 0}, 0),
                                    HeisenbergElement(Vector<Rational>{1, 2, 3, 4}, 5)};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 7);
  auto q = [&] { return Rational(num(rng), den(rng)); };
  for (std::size_t i = 0; i < samples; ++i) ns.emplace_back(Vector<Rational>{q(), q(), q(), q()}, q());
  for (const auto& n : ns) demo.certificates.push_back(real_witness_via_lift(demo.x, n, p, demo.h));
  return demo;
}

}  // namespace ratreal
