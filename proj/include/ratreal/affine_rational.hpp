#pragma once

// Rationality in GL(n) x| F^n for finite-order x: split F^n = ker(x - I) (+)
// im(x - I), certify on the image block and lift back.

#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ratreal/affine.hpp"
#include "ratreal/group.hpp"
#include "ratreal/matrix.hpp"
#include "ratreal/matrix_group.hpp"
#include "ratreal/semidirect.hpp"

namespace ratreal {

namespace detail {
template <ExactField T>
void require_order_divides(const Matrix<T>& x, long m, const char* what) {
  require_square(x, what);
  if (m < 1) throw UsageError(std::string(what) + ": order must be >= 1");
  if (matrix_power(x, m) != Matrix<T>::identity(x.rows()))
    throw PreconditionError(std::string(what) + ": x^" + std::to_string(m) + " != I");
}
}  // namespace detail

/// Outcome of solving g x = x^k g over matrix space for each admissible k.
template <ExactField T>
struct LinearRationality {
  long order = 1;
  std::map<long, Matrix<T>> witnesses;
  std::vector<long> refuted;       // only g = 0 solves the system
  std::vector<long> inconclusive;  // solutions exist, no invertible one was sampled

  bool rational() const { return refuted.empty() && inconclusive.empty(); }
};

/// For each k coprime to m an invertible g with g x g^-1 = x^k, picked as a
/// seeded random combination of a basis of the solution space.
template <ExactField T>
LinearRationality<T> rationality_certificates_linear(const Matrix<T>& x, long m, std::uint64_t seed = 0x1a2b3c,
                                                     int attempts = 64) {
  detail::require_order_divides(x, m, "rationality_certificates_linear");
  const std::size_t n = x.rows();
  LinearRationality<T> out;
  out.order = m;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coeff(-3, 3);

  for (long k : coprime_exponents(m)) {
    const Matrix<T> xk = matrix_power(x, k);
    if (xk == x) {
      out.witnesses.emplace(k, Matrix<T>::identity(n));
      continue;
    }
    // unknown g(a, b) sits at column a * n + b
    Matrix<T> system(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
          system(i * n + j, i * n + l) += x(l, j);
          system(i * n + j, l * n + j) -= xk(i, l);
        }
    const auto basis = nullspace(system);
    if (basis.empty()) {
      out.refuted.push_back(k);
      continue;
    }
    bool found = false;
    for (int attempt = 0; attempt < attempts && !found; ++attempt) {
      Vector<T> flat(n * n);
      for (const auto& b : basis) flat = flat + T(coeff(rng)) * b;
      Matrix<T> g(n, n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) g(a, b) = flat[a * n + b];
      if (determinant(g).is_zero()) continue;
      if (g * x * inverse(g) != xk) throw VerificationError("solution of g x = x^k g fails re-multiplication");
      out.witnesses.emplace(k, std::move(g));
      found = true;
    }
    if (!found) out.inconclusive.push_back(k);
  }
  return out;
}

/// F^n = ker(x - I) (+) im(x - I), with the adapted basis as the columns of
/// change_of_basis (kernel first).
template <ExactField T>
struct EigenOneSplitting {
  std::vector<Vector<T>> kernel_basis;
  std::vector<Vector<T>> image_basis;
  Matrix<T> change_of_basis;

  std::size_t kernel_dim() const { return kernel_basis.size(); }
  std::size_t image_dim() const { return image_basis.size(); }
  std::size_t dim() const { return change_of_basis.rows(); }

  Vector<T> to_adapted(const Vector<T>& v) const { return inverse(change_of_basis) * v; }
  Vector<T> from_adapted(const Vector<T>& c) const { return change_of_basis * c; }
  Matrix<T> to_adapted(const Matrix<T>& a) const { return inverse(change_of_basis) * a * change_of_basis; }
  Matrix<T> from_adapted(const Matrix<T>& a) const { return change_of_basis * a * inverse(change_of_basis); }

  Vector<T> kernel_part(const Vector<T>& c) const { return slice(c, 0, kernel_dim()); }
  Vector<T> image_part(const Vector<T>& c) const { return slice(c, kernel_dim(), image_dim()); }

 private:
  static Vector<T> slice(const Vector<T>& c, std::size_t from, std::size_t len) {
    Vector<T> out(len);
    for (std::size_t i = 0; i < len; ++i) out[i] = c[from + i];
    return out;
  }
};

template <ExactField T>
EigenOneSplitting<T> split_at_eigenvalue_one(const Matrix<T>& x, long m) {
  detail::require_order_divides(x, m, "split_at_eigenvalue_one");
  const std::size_t n = x.rows();
  const Matrix<T> shifted = x - Matrix<T>::identity(n);
  EigenOneSplitting<T> s;
  s.kernel_basis = kernel_basis(shifted);
  s.image_basis = image_basis(shifted);
  if (s.kernel_dim() + s.image_dim() != n)
    throw ConsistencyError("split_at_eigenvalue_one: rank-nullity violated");
  auto columns = s.kernel_basis;
  columns.insert(columns.end(), s.image_basis.begin(), s.image_basis.end());
  s.change_of_basis = Matrix<T>::from_columns(n, columns);
  if (determinant(s.change_of_basis).is_zero())
    throw PreconditionError("split_at_eigenvalue_one: ker(x - I) meets im(x - I); x is not semisimple at 1");

  // x must be block diagonal in the adapted basis, identity on the kernel
  const Matrix<T> adapted = s.to_adapted(x);
  const std::size_t kd = s.kernel_dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const bool kernel_block = i < kd && j < kd;
      const bool mixing = (i < kd) != (j < kd);
      if ((mixing && !adapted(i, j).is_zero()) || (kernel_block && adapted(i, j) != T(i == j ? 1 : 0)))
        throw ConsistencyError("split_at_eigenvalue_one: subspaces are not x-invariant");
    }
  return s;
}

/// The restriction g' of g to the image block, given g x g^-1 = x^k. g must
/// preserve both summands because ker(x^k - I) = ker(x - I) for k coprime to
/// the order; the mixing blocks are checked, not assumed.
template <ExactField T>
Matrix<T> extract_block_certificate(const Matrix<T>& g, const Matrix<T>& x, long k, const EigenOneSplitting<T>& s) {
  if (g * x * inverse(g) != matrix_power(x, k))
    throw PreconditionError("extract_block_certificate: g does not conjugate x to x^" + std::to_string(k));
  const Matrix<T> adapted = s.to_adapted(g);
  const std::size_t kd = s.kernel_dim(), n = s.dim();
  std::string offending;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((i < kd) != (j < kd) && !adapted(i, j).is_zero())
        offending += " (" + std::to_string(i) + "," + std::to_string(j) + ")=" + adapted(i, j).to_string();
  if (!offending.empty()) throw ConsistencyError("extract_block_certificate: mixing block nonzero at" + offending);

  const Matrix<T> block = adapted.block(kd, kd, s.image_dim(), s.image_dim());
  const Matrix<T> x_u = s.to_adapted(x).block(kd, kd, s.image_dim(), s.image_dim());
  if (block * x_u * inverse(block) != matrix_power(x_u, k))
    throw VerificationError("extract_block_certificate: block does not conjugate x_U to its power");
  return block;
}

enum class AffineRoute { FixedPointFree, ImageBlock, InfiniteOrder };

inline const char* to_string(AffineRoute r) {
  switch (r) {
    case AffineRoute::FixedPointFree: return "fixed-point-free";
    case AffineRoute::ImageBlock: return "image-block";
    case AffineRoute::InfiniteOrder: return "infinite-order";
  }
  return "?";
}

template <ExactField T>
struct AffineRationalityResult {
  AffineRoute route = AffineRoute::FixedPointFree;
  OrderResult order = OrderResult::exceeds(0);  // of (x, v), searched up to 10 m
  /// finite routes: one per k coprime to m; infinite route: the reality
  /// certificate under key -1.
  std::map<long, Certificate<AffineElement<T>>> certificates;
  std::map<long, Matrix<T>> image_blocks;  // k -> g' (image-block route)
  Vector<T> kernel_component;
  /// (l, kernel coordinates of the translation part of (x, v)^l)
  std::vector<std::pair<long, Vector<T>>> kernel_growth;
  std::string reason;

  bool rational() const { return !certificates.empty(); }
};

/// Rationality of (x, v) for x of finite order m, given certs[k] with
/// certs[k] x certs[k]^-1 = x^k for every k coprime to m.
template <ExactField T>
AffineRationalityResult<T> classify_affine_rational(const Matrix<T>& x, const Vector<T>& v, long m,
                                                    const std::map<long, Matrix<T>>& certs) {
  detail::require_order_divides(x, m, "classify_affine_rational");
  if (v.dim() != x.rows()) throw UsageError("classify_affine_rational: dimension mismatch");
  for (long k : coprime_exponents(m)) {
    auto it = certs.find(k);
    if (it == certs.end()) throw PreconditionError("classify_affine_rational: no certificate for k = " + std::to_string(k));
    if (determinant(it->second).is_zero() || it->second * x * inverse(it->second) != matrix_power(x, k))
      throw PreconditionError("classify_affine_rational: certificate for k = " + std::to_string(k) + " is invalid");
  }

  using A = AffineElement<T>;
  using Route = AffineRoute;
  const std::size_t n = x.rows();
  const A subject(x, v);
  AffineRationalityResult<T> out;
  out.order = element_order(subject, 10 * m);

  if (!has_fixed_point(x)) {
    out.route = Route::FixedPointFree;
    for (long k : coprime_exponents(m)) out.certificates.emplace(k, make_power_witness(x, v, certs.at(k), k));
    out.reason = "x has no nonzero fixed vector";
    return out;
  }

  const auto s = split_at_eigenvalue_one(x, m);
  const std::size_t kd = s.kernel_dim(), ud = s.image_dim();
  const Vector<T> c = s.to_adapted(v);
  out.kernel_component = s.kernel_part(c);
  const Matrix<T> x_u = s.to_adapted(x).block(kd, kd, ud, ud);

  if (out.kernel_component.is_zero()) {
    out.route = Route::ImageBlock;
    const Vector<T> v_u = s.image_part(c);
    for (long k : coprime_exponents(m)) {
      const Matrix<T> g_u = extract_block_certificate(certs.at(k), x, k, s);
      out.image_blocks.emplace(k, g_u);
      Matrix<T> lifted_linear(n, n);
      Vector<T> lifted_translation(n);
      for (std::size_t i = 0; i < kd; ++i) lifted_linear(i, i) = T(1);
      if (ud > 0) {
        const auto block_cert = make_power_witness(x_u, v_u, g_u, k);
        for (std::size_t i = 0; i < ud; ++i) {
          lifted_translation[kd + i] = block_cert.witness().translation()[i];
          for (std::size_t j = 0; j < ud; ++j) lifted_linear(kd + i, kd + j) = block_cert.witness().linear()(i, j);
        }
      }
      const A witness(s.from_adapted(lifted_linear), s.from_adapted(lifted_translation));
      out.certificates.emplace(k, Certificate<A>::make(subject, witness, Relation::power(k)));
    }
    out.reason = "v lies in im(x - I); certified on the image block and lifted";
    return out;
  }

  if constexpr (!has_characteristic_zero<T>) {
    throw PreconditionError("classify_affine_rational: kernel component is nonzero and the field has positive characteristic");
  } else {
    out.route = Route::InfiniteOrder;
    // x acts trivially on the kernel summand, so the translation of (x, v)^l
    // has kernel coordinates l v_K
    for (long l : {1L, m, 10 * m}) {
      const Vector<T> kernel_coords = s.kernel_part(s.to_adapted(group_power(subject, l).translation()));
      if (kernel_coords != T(l) * out.kernel_component)
        throw ConsistencyError("telescoped translation does not grow linearly in the kernel");
      out.kernel_growth.emplace_back(l, kernel_coords);
    }

    // h = diag(-I_K, h_U) with h_U x_U h_U^-1 = x_U^-1, then solve
    // (I - X^-1) w = -X^-1 c - H c in adapted coordinates
    Matrix<T> h_u = Matrix<T>::identity(ud);
    if (m > 2) h_u = extract_block_certificate(certs.at(m - 1), x, m - 1, s);
    Matrix<T> h(n, n);
    for (std::size_t i = 0; i < kd; ++i) h(i, i) = T(-1);
    for (std::size_t i = 0; i < ud; ++i)
      for (std::size_t j = 0; j < ud; ++j) h(kd + i, kd + j) = h_u(i, j);
    const Matrix<T> big_x = s.to_adapted(x);
    const Matrix<T> x_inv = inverse(big_x);
    const Vector<T> rhs = -(x_inv * c) - h * c;
    Vector<T> w(n);
    if (ud > 0) {
      const Matrix<T> sys = Matrix<T>::identity(ud) - x_inv.block(kd, kd, ud, ud);
      Vector<T> rhs_u(ud);
      for (std::size_t i = 0; i < ud; ++i) rhs_u[i] = rhs[kd + i];
      auto w_u = solve_linear(sys, rhs_u);
      if (!w_u) throw ConsistencyError("image-block reality system inconsistent");
      for (std::size_t i = 0; i < ud; ++i) w[kd + i] = (*w_u)[i];
    }
    const A witness(s.from_adapted(h), s.from_adapted(w));
    out.certificates.emplace(-1, Certificate<A>::make(subject, witness, Relation::inverse()));
    out.reason = "kernel component nonzero: infinite order, rational iff real; real via diag(-I, h_U)";
    return out;
  }
}

}  // namespace ratreal
