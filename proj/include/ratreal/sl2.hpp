#pragma once

// SL(2, Q) acting on binary forms of degree n, and reality/rationality of
// elements of SL(2, Q) x| V_n.

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ratreal/group.hpp"
#include "ratreal/matrix.hpp"
#include "ratreal/scalar.hpp"
#include "ratreal/semidirect.hpp"

namespace ratreal {

class SL2Element {
 public:
  SL2Element(Rational a, Rational b, Rational c, Rational d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_ * d_ - b_ * c_ != Rational(1)) throw UsageError("SL2Element: determinant must be 1");
  }

  static SL2Element identity() { return {1, 0, 0, 1}; }
  static SL2Element minus_identity() { return {-1, 0, 0, -1}; }
  static SL2Element diagonal(const Rational& r) { return {r, 0, 0, r.inverse()}; }
  /// [[0, t], [-1/t, 0]]: the elements conjugating diag(r, 1/r) to its inverse.
  static SL2Element antidiagonal(const Rational& t) {
    if (t.is_zero()) throw UsageError("antidiagonal witness needs t != 0");
    return {0, t, -t.inverse(), 0};
  }
  static SL2Element from_matrix(const Matrix<Rational>& m) {
    if (m.rows() != 2 || m.cols() != 2) throw UsageError("SL2Element needs a 2x2 matrix");
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }

  bool is_diagonal() const { return b_.is_zero() && c_.is_zero(); }
  Matrix<Rational> matrix() const { return {{a_, b_}, {c_, d_}}; }

  SL2Element inverse() const { return {d_, -b_, -c_, a_}; }
  std::string key() const { return matrix().to_string(); }

  friend SL2Element operator*(const SL2Element& x, const SL2Element& y) {
    return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
            x.c_ * y.b_ + x.d_ * y.d_};
  }
  friend bool operator==(const SL2Element&, const SL2Element&) = default;

 private:
  Rational a_, b_, c_, d_;
};

/// sum_i a_i x^{n-i} y^i, coefficient vector of length n + 1.
struct PolyVector {
  int degree = 0;
  Vector<Rational> coeffs;

  PolyVector(int n, Vector<Rational> c) : degree(n), coeffs(std::move(c)) {
    if (n < 0 || coeffs.dim() != static_cast<std::size_t>(n) + 1) throw UsageError("PolyVector: need n + 1 coefficients");
  }
};

namespace detail {
// coefficients (in x^{k-i} y^i order) of (p x + q y)^k
inline std::vector<Rational> linear_form_power(const Rational& p, const Rational& q, int k) {
  std::vector<Rational> out{Rational(1)};
  for (int step = 0; step < k; ++step) {
    std::vector<Rational> next(out.size() + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i] += out[i] * p;
      next[i + 1] += out[i] * q;
    }
    out = std::move(next);
  }
  return out;
}
}  // namespace detail

/// Matrix of p(x, y) -> p(ax + by, cx + dy) on the monomial basis
/// x^n, x^{n-1} y, ..., y^n, by exact expansion.
inline Matrix<Rational> rho(const SL2Element& g, int n) {
  if (n < 0) throw UsageError("rho: degree must be >= 0");
  const auto dim = static_cast<std::size_t>(n) + 1;
  Matrix<Rational> m(dim, dim);
  for (int i = 0; i <= n; ++i) {
    auto left = detail::linear_form_power(g.a(), g.b(), n - i);
    auto right = detail::linear_form_power(g.c(), g.d(), i);
    for (std::size_t s = 0; s < left.size(); ++s)
      for (std::size_t t = 0; t < right.size(); ++t) m(s + t, static_cast<std::size_t>(i)) += left[s] * right[t];
  }
  return m;
}

namespace detail {
inline SL2Element sample_sl2(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
  for (;;) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    if (a.is_zero()) continue;
    return {a, b, c, (Rational(1) + b * c) / a};
  }
}

/// rho composes one way or the other; find out which by testing both
/// candidates on sampled pairs. True means g -> rho(g^-1) is the homomorphism.
inline bool determine_handedness(int n) {
  std::mt19937_64 rng(0x5eed);
  bool direct = true, inverted = true;
  for (int trial = 0; trial < 8; ++trial) {
    auto g = sample_sl2(rng), h = sample_sl2(rng);
    direct = direct && rho(g * h, n) == rho(g, n) * rho(h, n);
    inverted = inverted && rho((g * h).inverse(), n) == rho(g.inverse(), n) * rho(h.inverse(), n);
  }
  if (direct == inverted) throw ConsistencyError("could not determine the handedness of rho");
  return inverted;
}

inline bool rho_needs_inverse() {
  static const bool value = determine_handedness(3);
  return value;
}

// per-degree confirmation, computed once per degree
inline bool handedness_confirmed(int n) {
  static std::mutex mutex;
  static std::map<int, bool> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, n == 0 || determine_handedness(n) == rho_needs_inverse()).first;
  return it->second;
}
}  // namespace detail

/// The homomorphism SL(2) -> GL(V_n) fed to the semidirect product: rho(g) or
/// rho(g^-1), whichever composes covariantly.
class SymmetricPowerRep {
 public:
  explicit SymmetricPowerRep(int n) : n_(n), uses_inverse_(detail::rho_needs_inverse()) {
    if (n < 0) throw UsageError("SymmetricPowerRep: degree must be >= 0");
    if (!detail::handedness_confirmed(n))
      throw ConsistencyError("handedness differs between degrees");
  }

  int degree() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(n_) + 1; }
  bool uses_inverse() const { return uses_inverse_; }

  Matrix<Rational> operator()(const SL2Element& g) const { return rho(uses_inverse_ ? g.inverse() : g, n_); }

  /// The h' with map(h') = rho(h).
  SL2Element preimage_of_rho(const SL2Element& h) const { return uses_inverse_ ? h.inverse() : h; }

 private:
  int n_;
  bool uses_inverse_;
};

/// (g, v) read as [[map(g), v], [0, 1]].
class Sl2VElement {
 public:
  Sl2VElement(SL2Element g, Vector<Rational> v) : g_(std::move(g)), v_(std::move(v)) {
    if (v_.dim() < 1) throw UsageError("Sl2VElement: empty vector");
  }

  const SL2Element& linear() const { return g_; }
  const Vector<Rational>& translation() const { return v_; }
  int degree() const { return static_cast<int>(v_.dim()) - 1; }

  Sl2VElement inverse() const {
    SL2Element gi = g_.inverse();
    return {gi, -(SymmetricPowerRep(degree())(gi) * v_)};
  }
  std::string key() const { return g_.key() + "|" + v_.to_string(); }

  friend Sl2VElement operator*(const Sl2VElement& a, const Sl2VElement& b) {
    if (a.v_.dim() != b.v_.dim()) throw UsageError("Sl2VElement: degree mismatch");
    return {a.g_ * b.g_, SymmetricPowerRep(a.degree())(a.g_) * b.v_ + a.v_};
  }
  friend bool operator==(const Sl2VElement&, const Sl2VElement&) = default;

 private:
  SL2Element g_;
  Vector<Rational> v_;
};

/// {+-1, +-2, +-1/2, +-3, +-1/3}
inline std::vector<Rational> default_t_grid() {
  return {Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2),
          Rational(-1, 2), Rational(3), Rational(-3), Rational(1, 3), Rational(-1, 3)};
}

struct NegationSearchFamilies {
  std::vector<Rational> t_grid = default_t_grid();
  bool minus_identity = true;
  bool antidiagonal = true;
  bool unipotent_conjugates = true;
  /// degree 2 only: for v = L1 L2 with rational linear factors, M^-1 S M
  /// swaps the factors up to sign.
  bool factored_quadratic = true;
};

namespace detail {
inline std::optional<SL2Element> factored_quadratic_candidate(const Vector<Rational>& v) {
  // v1 x^2 + v2 xy + v3 y^2 = (al x + be y)(ga x + de y) over Q
  const Rational& v1 = v[0];
  const Rational& v2 = v[1];
  const Rational& v3 = v[2];
  Rational disc = v2 * v2 - Rational(4) * v1 * v3;
  if (disc.sign() <= 0) return std::nullopt;
  mpq_class root;
  {
    mpz_class num = disc.numerator(), den = disc.denominator();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = mpq_class(rn, rd);
  }
  Rational s(root);
  Matrix<Rational> m(2, 2);
  if (!v1.is_zero()) {
    // roots of v1 z^2 + v2 z + v3 in z = x / y
    Rational z1 = (-v2 + s) / (Rational(2) * v1);
    Rational z2 = (-v2 - s) / (Rational(2) * v1);
    m = Matrix<Rational>{{v1, -v1 * z1}, {1, -z2}};
  } else {
    // y (v2 x + v3 y)
    m = Matrix<Rational>{{0, 1}, {v2, v3}};
  }
  Matrix<Rational> swap{{0, 1}, {-1, 0}};
  return SL2Element::from_matrix(inverse(m) * swap * m);
}
}  // namespace detail

/// First h among the configured families with rho(h) v = -v.
inline std::optional<SL2Element> negation_witness_search(const PolyVector& v,
                                                         const NegationSearchFamilies& families = {}) {
  const Vector<Rational> target = -v.coeffs;
  auto hits = [&](const SL2Element& h) { return rho(h, v.degree) * v.coeffs == target; };
  if (families.minus_identity && hits(SL2Element::minus_identity())) return SL2Element::minus_identity();
  if (families.antidiagonal)
    for (const auto& t : families.t_grid)
      if (auto h = SL2Element::antidiagonal(t); hits(h)) return h;
  if (families.unipotent_conjugates)
    for (const auto& u : families.t_grid)
      for (const auto& t : families.t_grid) {
        SL2Element y = SL2Element::antidiagonal(t);
        for (const SL2Element& k : {SL2Element(1, u, 0, 1), SL2Element(1, 0, u, 1)})
          if (auto h = k * y * k.inverse(); hits(h)) return h;
      }
  if (families.factored_quadratic && v.degree == 2)
    if (auto h = detail::factored_quadratic_candidate(v.coeffs); h && hits(*h)) return h;
  return std::nullopt;
}

struct RealityResult {
  enum class Verdict { Real, NotReal, Unknown };
  Verdict verdict = Verdict::Unknown;
  std::optional<Certificate<Sl2VElement>> certificate;
  std::string reason;

  bool is_real() const { return verdict == Verdict::Real; }
};

inline const char* to_string(RealityResult::Verdict v) {
  switch (v) {
    case RealityResult::Verdict::Real: return "Real";
    case RealityResult::Verdict::NotReal: return "NotReal";
    case RealityResult::Verdict::Unknown: return "Unknown";
  }
  return "?";
}

namespace detail {
inline void check_classify_input(const SL2Element& x, const PolyVector& v, const Rational& t) {
  if (t.is_zero()) throw UsageError("classify_real: t must be nonzero");
  if (!x.is_diagonal()) throw UsageError("classify_real: x must be diagonal; conjugate it to diag(r, 1/r) first");
  if (v.degree < 0) throw UsageError("classify_real: bad degree");
}

/// Sound obstructions for x = +-I, n = 2: rho(h) v = -v would send a
/// definite or rank-one form to one of the opposite signature.
inline std::optional<std::string> quadratic_signature_obstruction(const PolyVector& v) {
  if (v.degree != 2 || v.coeffs.is_zero()) return std::nullopt;
  Rational disc = v.coeffs[1] * v.coeffs[1] - Rational(4) * v.coeffs[0] * v.coeffs[2];
  if (disc.sign() < 0) return "definite binary quadratic form cannot be mapped to its negative over R";
  if (disc.sign() == 0) return "rank-one binary quadratic form (+-square of a linear form) cannot be mapped to its negative over R";
  return std::nullopt;
}
}  // namespace detail

/// Reality of (x, v) in SL(2) x| V_n for diagonal x = diag(r, 1/r).
/// middle is the value given to the free coordinate of the even-n system.
inline RealityResult classify_real(const SL2Element& x, const PolyVector& v, const Rational& t = Rational(1),
                                   const NegationSearchFamilies& families = {},
                                   const Rational& middle = Rational(0)) {
  detail::check_classify_input(x, v, t);
  const int n = v.degree;
  const SymmetricPowerRep rep(n);
  const auto dim = rep.dim();
  const Matrix<Rational> big_x = rep(x);
  const Sl2VElement subject(x, v.coeffs);
  RealityResult out;

  if (big_x == Matrix<Rational>::identity(dim)) {
    // x central and acting trivially: (x, v) is real iff some h negates v
    if (auto h = negation_witness_search(v, families)) {
      out.verdict = RealityResult::Verdict::Real;
      out.certificate = Certificate<Sl2VElement>::make(subject, Sl2VElement(rep.preimage_of_rho(*h), Vector<Rational>(dim)),
                                                       Relation::inverse());
      out.reason = "rho(h) v = -v for h = " + h->key();
      return out;
    }
    if (auto why = detail::quadratic_signature_obstruction(v)) {
      out.verdict = RealityResult::Verdict::NotReal;
      out.reason = *why;
      return out;
    }
    out.verdict = RealityResult::Verdict::Unknown;
    out.reason = "no h with rho(h) v = -v in the searched families (-I, antidiagonal t-grid, unipotent conjugates";
    out.reason += n == 2 ? ", factored quadratic); indefinite form with non-square discriminant" : ")";
    return out;
  }

  const SL2Element y = SL2Element::antidiagonal(t);
  const Matrix<Rational> big_y = rep(y);

  if (!has_fixed_point(big_x)) {
    auto affine = make_real_witness(big_x, v.coeffs, big_y);
    out.verdict = RealityResult::Verdict::Real;
    out.certificate = Certificate<Sl2VElement>::make(subject, Sl2VElement(y, affine.witness().translation()),
                                                     Relation::inverse());
    out.reason = "map(x) is fixed-point-free; conjugator from the unique w of (x - I) w = v";
    return out;
  }

  // even n, r != +-1: solve (I - X^-1) w = -X^-1 v - Y v coordinatewise; the
  // coordinate with X_ii = 1 carries no unknown.
  const Matrix<Rational> x_inv = inverse(big_x);
  const Vector<Rational> rhs = -(x_inv * v.coeffs) - big_y * v.coeffs;
  Vector<Rational> w(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Rational coeff = Rational(1) - x_inv(i, i);
    if (!coeff.is_zero()) {
      w[i] = rhs[i] / coeff;
    } else if (rhs[i].is_zero()) {
      w[i] = middle;
    } else {
      // Every SL(2) element conjugating diag(r, 1/r) to its inverse is
      // [[0, s], [-1/s, 0]], whose map has the same entry at (i, i) for all s.
      out.verdict = RealityResult::Verdict::NotReal;
      out.reason = "fixed coordinate " + std::to_string(i) + ": the equation reads 0 = " + rhs[i].to_string() +
                   " and map([[0,s],[-1/s,0]]) has entry " + big_y(i, i).to_string() +
                   " there for every s, so no conjugator exists";
      return out;
    }
  }
  out.verdict = RealityResult::Verdict::Real;
  out.certificate = Certificate<Sl2VElement>::make(subject, Sl2VElement(y, w), Relation::inverse());
  out.reason = "antidiagonal system solved with free coordinate " + middle.to_string();
  return out;
}

struct Sl2RationalityResult {
  enum class Verdict { Rational, NotRational, Unknown };
  Verdict verdict = Verdict::Unknown;
  OrderResult order = OrderResult::exceeds(0);
  std::map<long, Certificate<Sl2VElement>> certificates;  // keyed by exponent; -1 for the inverse
  std::string reason;
};

inline const char* to_string(Sl2RationalityResult::Verdict v) {
  switch (v) {
    case Sl2RationalityResult::Verdict::Rational: return "Rational";
    case Sl2RationalityResult::Verdict::NotRational: return "NotRational";
    case Sl2RationalityResult::Verdict::Unknown: return "Unknown";
  }
  return "?";
}

/// Infinite order: rational iff real, and the reality certificate serves.
/// Finite order m: a certificate for every k coprime to m.
inline Sl2RationalityResult classify_rational_sl2v(const SL2Element& x, const PolyVector& v,
                                                   long bound = kDefaultOrderBound, const Rational& t = Rational(1),
                                                   const NegationSearchFamilies& families = {}) {
  detail::check_classify_input(x, v, t);
  const SymmetricPowerRep rep(v.degree);
  const Sl2VElement subject(x, v.coeffs);
  Sl2RationalityResult out;
  out.order = element_order(subject, bound);

  if (!out.order.is_finite()) {
    auto real = classify_real(x, v, t, families);
    out.reason = "infinite order: rational iff real; " + real.reason;
    if (real.verdict == RealityResult::Verdict::Real) {
      out.verdict = Sl2RationalityResult::Verdict::Rational;
      out.certificates.emplace(-1, *real.certificate);
    } else {
      out.verdict = real.verdict == RealityResult::Verdict::NotReal ? Sl2RationalityResult::Verdict::NotRational
                                                                    : Sl2RationalityResult::Verdict::Unknown;
    }
    return out;
  }

  const long m = out.order.value();
  const SL2Element y = SL2Element::antidiagonal(t);
  const Matrix<Rational> big_x = rep(x);
  for (long k : coprime_exponents(m)) {
    const SL2Element target = group_power(x, k);
    std::optional<SL2Element> h;
    if (target == x) h = SL2Element::identity();
    else if (target == x.inverse()) h = y;
    std::optional<Certificate<Sl2VElement>> cert;
    if (h && k == 1) {
      cert = Certificate<Sl2VElement>::make(subject, identity_of(subject), Relation::power(1));
    } else if (h && !has_fixed_point(big_x)) {
      auto affine = make_power_witness(big_x, v.coeffs, rep(*h), k, bound);
      cert = Certificate<Sl2VElement>::make(subject, Sl2VElement(*h, affine.witness().translation()),
                                            Relation::power(k));
    }
    if (!cert) {
      out.verdict = Sl2RationalityResult::Verdict::Unknown;
      out.reason = "no constructive route for k = " + std::to_string(k);
      return out;
    }
    out.certificates.emplace(k, *std::move(cert));
  }
  out.verdict = Sl2RationalityResult::Verdict::Rational;
  out.reason = "finite order " + std::to_string(m) + ": certificates for every k coprime to the order";
  return out;
}

}  // namespace ratreal
