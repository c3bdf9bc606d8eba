#pragma once

// Exact scalar fields: Q (GMP-backed), Q(i), and F_p for small compile-time p.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "ratreal/errors.hpp"

namespace ratreal {

/// Arbitrary precision rational number, always in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I n) : value_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)

  Rational(long numerator, long denominator) {
    if (denominator == 0) throw SingularMatrixError("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
  }

  Rational(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) throw SingularMatrixError("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
  }

  explicit Rational(mpq_class q) : value_(std::move(q)) { value_.canonicalize(); }

  /// Accepts "p" or "p/q" with optional leading '-'. No decimals, no spaces.
  static Rational parse(std::string_view text) {
    auto digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
    if (!digits(num) || (slash != std::string_view::npos && !digits(den)))
      throw ParseError("not an exact rational: '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    if (text.front() == '-') n = -n;
    return Rational(n, d);
  }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  int sign() const { return sgn(value_); }

  Rational inverse() const {
    if (is_zero()) throw SingularMatrixError("inverse of rational zero");
    return Rational(mpq_class(1) / value_);
  }

  std::string to_string() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ + b.value_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ - b.value_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ * b.value_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw SingularMatrixError("division by rational zero");
    return Rational(mpq_class(a.value_ / b.value_));
  }
  Rational operator-() const { return Rational(mpq_class(-value_)); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

 private:
  mpq_class value_{0};
};

/// Integer power with negative exponents through the inverse.
template <class T>
T scalar_pow(const T& base, long k) {
  if (k < 0) return scalar_pow(T(1) / base, -k);
  T result(1);
  T b = base;
  while (k > 0) {
    if (k & 1) result = result * b;
    b = b * b;
    k >>= 1;
  }
  return result;
}

/// Element re + im*i of Q(i).
class GaussianRational {
 public:
  GaussianRational() = default;
  template <std::integral I>
  GaussianRational(I n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }

  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational conj() const { return {re_, -im_}; }

  GaussianRational inverse() const {
    if (is_zero()) throw SingularMatrixError("inverse of gaussian zero");
    Rational n = norm();
    return {re_ / n, -im_ / n};
  }

  /// "a+b i" / "a-b i" with a, b exact rationals; a bare rational is also accepted.
  std::string to_string() const {
    std::string s = re_.to_string();
    if (im_.sign() < 0)
      s += "-" + (-im_).to_string() + " i";
    else
      s += "+" + im_.to_string() + " i";
    return s;
  }

  static GaussianRational parse(std::string_view text) {
    if (text.size() < 2 || text.substr(text.size() - 2) != " i") return {Rational::parse(text), Rational(0)};
    std::string_view body = text.substr(0, text.size() - 2);
    // split at the sign that separates the imaginary part; skip a leading '-'
    auto pos = body.find_first_of("+-", 1);
    if (pos == std::string_view::npos) throw ParseError("not an exact gaussian rational: '" + std::string(text) + "'");
    Rational re = Rational::parse(body.substr(0, pos));
    std::string_view imag = body.substr(pos + 1);
    if (!imag.empty() && imag.front() == '-') throw ParseError("doubled sign in '" + std::string(text) + "'");
    Rational im = Rational::parse(imag);
    if (body[pos] == '-') im = -im;
    return {re, im};
  }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) { return a * b.inverse(); }
  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

 private:
  Rational re_;
  Rational im_;
};

constexpr bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Residue class modulo the prime P.
template <std::uint32_t P>
class ModP {
  static_assert(is_prime(P), "ModP modulus must be prime");

 public:
  static constexpr std::uint32_t modulus = P;

  constexpr ModP() = default;
  template <std::integral I>
  constexpr ModP(I n)  // NOLINT(google-explicit-constructor)
      : value_(static_cast<std::uint32_t>(((static_cast<long long>(n) % static_cast<long long>(P)) + P) % P)) {}

  constexpr std::uint32_t value() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }
  constexpr bool is_one() const { return value_ == 1; }

  constexpr ModP inverse() const {
    if (value_ == 0) throw SingularMatrixError("inverse of zero mod p");
    return scalar_pow(*this, static_cast<long>(P) - 2);
  }

  std::string to_string() const { return std::to_string(value_); }

  /// Only canonical residues 0..P-1 are accepted.
  static ModP parse(std::string_view text) {
    if (text.empty() || text.size() > 9) throw ParseError("bad residue '" + std::string(text) + "'");
    std::uint32_t v = 0;
    for (char c : text) {
      if (c < '0' || c > '9') throw ParseError("bad residue '" + std::string(text) + "'");
      v = v * 10 + static_cast<std::uint32_t>(c - '0');
    }
    if (v >= P) throw ParseError("residue out of range mod " + std::to_string(P) + ": " + std::string(text));
    return ModP(v);
  }

  friend constexpr ModP operator+(ModP a, ModP b) { return ModP(static_cast<long long>(a.value_) + b.value_); }
  friend constexpr ModP operator-(ModP a, ModP b) { return ModP(static_cast<long long>(a.value_) - b.value_); }
  friend constexpr ModP operator*(ModP a, ModP b) {
    return ModP(static_cast<long long>(a.value_) * static_cast<long long>(b.value_));
  }
  friend constexpr ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
  constexpr ModP operator-() const { return ModP(-static_cast<long long>(value_)); }

  constexpr ModP& operator+=(ModP o) { return *this = *this + o; }
  constexpr ModP& operator-=(ModP o) { return *this = *this - o; }
  constexpr ModP& operator*=(ModP o) { return *this = *this * o; }

  friend constexpr bool operator==(ModP, ModP) = default;
  friend constexpr auto operator<=>(ModP a, ModP b) { return a.value_ <=> b.value_; }

  friend std::ostream& operator<<(std::ostream& os, ModP z) { return os << z.value_; }

 private:
  std::uint32_t value_ = 0;
};

/// False for the prime fields, whose elements all have additive order P.
template <class T>
inline constexpr bool has_characteristic_zero = !requires { T::modulus; };

/// What the linear algebra needs from a scalar type.
template <class T>
concept ExactField = std::regular<T> && requires(const T& a, const T& b, std::string_view s) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.inverse() } -> std::convertible_to<T>;
  { a.to_string() } -> std::convertible_to<std::string>;
  { T::parse(s) } -> std::convertible_to<T>;
  T(1);
};

}  // namespace ratreal
