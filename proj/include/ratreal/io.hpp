#pragma once

// Exact JSON encodings of scalars, matrices, group elements and certificates,
// plus the report digest.

#include <cstdint>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "ratreal/affine.hpp"
#include "ratreal/errors.hpp"
#include "ratreal/group.hpp"
#include "ratreal/heisenberg.hpp"
#include "ratreal/matrix.hpp"
#include "ratreal/scalar.hpp"
#include "ratreal/sl2.hpp"
#include "ratreal/solvable.hpp"

namespace ratreal::io {

using json = nlohmann::json;

/// Scalars travel as strings ("p/q", "a+b i", residues); bare JSON integers
/// are accepted on input, floating-point numbers never are.
template <ExactField T>
T scalar_from(const json& j) {
  if (j.is_string()) return T::parse(j.get<std::string>());
  if (j.is_number_integer()) return T::parse(std::to_string(j.get<long long>()));
  throw ParseError("expected an exact scalar (string or integer), got " + j.dump());
}

template <ExactField T>
json to_json(const Vector<T>& v) {
  json out = json::array();
  for (const auto& x : v.entries()) out.push_back(x.to_string());
  return out;
}

template <ExactField T>
json to_json(const Matrix<T>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    out.push_back(std::move(row));
  }
  return out;
}

template <ExactField T>
Vector<T> vector_from(const json& j) {
  if (!j.is_array()) throw ParseError("expected a vector, got " + j.dump());
  Vector<T> v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = scalar_from<T>(j[i]);
  return v;
}

template <ExactField T>
Matrix<T> matrix_from(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty matrix, got " + j.dump());
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError("ragged matrix: " + j.dump());
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = scalar_from<T>(j[i][c]);
  }
  return m;
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

// ---------------------------------------------------------------------------
// Element codecs: name(), encode(), decode().

template <class G>
struct Codec;

template <std::uint32_t P>
struct Codec<AffineElement<ModP<P>>> {
  using G = AffineElement<ModP<P>>;
  static std::string name() { return "affine-F" + std::to_string(P); }
  static json encode(const G& g) { return {{"linear", to_json(g.linear())}, {"translation", to_json(g.translation())}}; }
  static G decode(const json& j) {
    return G(matrix_from<ModP<P>>(field(j, "linear")), vector_from<ModP<P>>(field(j, "translation")));
  }
};

template <>
struct Codec<AffineElement<Rational>> {
  using G = AffineElement<Rational>;
  static std::string name() { return "affine-Q"; }
  static json encode(const G& g) { return {{"linear", to_json(g.linear())}, {"translation", to_json(g.translation())}}; }
  static G decode(const json& j) {
    return G(matrix_from<Rational>(field(j, "linear")), vector_from<Rational>(field(j, "translation")));
  }
};

template <>
struct Codec<Sl2VElement> {
  using G = Sl2VElement;
  static std::string name() { return "sl2v"; }
  static json encode(const G& g) {
    return {{"linear", to_json(g.linear().matrix())}, {"translation", to_json(g.translation())}};
  }
  static G decode(const json& j) {
    return G(SL2Element::from_matrix(matrix_from<Rational>(field(j, "linear"))),
             vector_from<Rational>(field(j, "translation")));
  }
};

template <>
struct Codec<GSpHeisenbergElement> {
  using G = GSpHeisenbergElement;
  static std::string name() { return "gsp-heisenberg"; }
  static json encode(const G& g) {
    return {{"acting", to_json(g.acting().matrix())},
            {"mu", g.acting().mu().to_string()},
            {"v", to_json(g.normal().v())},
            {"t", g.normal().t().to_string()}};
  }
  static G decode(const json& j) {
    GSpElement h(matrix_from<Rational>(field(j, "acting")), scalar_from<Rational>(field(j, "mu")));
    HeisenbergElement n(vector_from<Rational>(field(j, "v")), scalar_from<Rational>(field(j, "t")));
    if (n.dim() != h.dim()) throw ParseError("gsp-heisenberg: dimension mismatch");
    return G(std::move(h), std::move(n));
  }
};

template <>
struct Codec<ComplexHeisenbergSemidirect> {
  using G = ComplexHeisenbergSemidirect;
  static std::string name() { return "complex-heisenberg"; }
  static json encode(const G& g) {
    return {{"lambda", g.acting().value().to_string()},
            {"a", g.normal().a().to_string()},
            {"b", g.normal().b().to_string()},
            {"c", g.normal().c().to_string()}};
  }
  static G decode(const json& j) {
    return G(UnitElement<GaussianRational>(scalar_from<GaussianRational>(field(j, "lambda"))),
             ComplexHeisenbergElement(scalar_from<GaussianRational>(field(j, "a")),
                                      scalar_from<GaussianRational>(field(j, "b")),
                                      scalar_from<GaussianRational>(field(j, "c"))));
  }
};

// ---------------------------------------------------------------------------
// Certificates

inline Relation relation_from(const std::string& text) {
  if (text == "inverse") return Relation::inverse();
  if (text.rfind("power:", 0) == 0) {
    const std::string digits = text.substr(6);
    std::size_t used = 0;
    long k = 0;
    try {
      k = std::stol(digits, &used);
    } catch (const std::exception&) {
      throw ParseError("bad relation '" + text + "'");
    }
    if (used != digits.size() || digits.empty()) throw ParseError("bad relation '" + text + "'");
    return Relation::power(k);
  }
  throw ParseError("bad relation '" + text + "'");
}

/// A certificate carries both products so a reader can see what was checked.
template <GroupElement G>
json encode_certificate(const Certificate<G>& c) {
  return {{"group", Codec<G>::name()},
          {"relation", c.relation().to_string()},
          {"subject", Codec<G>::encode(c.subject())},
          {"witness", Codec<G>::encode(c.witness())},
          {"conjugate", Codec<G>::encode(conjugate(c.witness(), c.subject()))},
          {"target", Codec<G>::encode(c.relation().target(c.subject()))},
          {"verified", c.reverify()}};
}

namespace detail {
template <GroupElement G>
std::string check_certificate_as(const json& j) {
  const G subject = Codec<G>::decode(field(j, "subject"));
  const G witness = Codec<G>::decode(field(j, "witness"));
  const Relation relation = relation_from(field(j, "relation").get<std::string>());
  const G conj = conjugate(witness, subject);
  const G target = relation.target(subject);
  if (conj != target) return "witness does not conjugate the subject as claimed";
  if (Codec<G>::decode(field(j, "conjugate")) != conj) return "stored conjugate product is wrong";
  if (Codec<G>::decode(field(j, "target")) != target) return "stored target product is wrong";
  if (field(j, "verified") != json(true)) return "verified flag is not true";
  return {};
}
}  // namespace detail

/// Empty on success, otherwise what failed.
inline std::string check_certificate(const json& j) {
  try {
    const std::string group = field(j, "group").get<std::string>();
    if (group == "affine-Q") return detail::check_certificate_as<AffineElement<Rational>>(j);
    if (group == "affine-F2") return detail::check_certificate_as<AffineElement<ModP<2>>>(j);
    if (group == "affine-F3") return detail::check_certificate_as<AffineElement<ModP<3>>>(j);
    if (group == "affine-F5") return detail::check_certificate_as<AffineElement<ModP<5>>>(j);
    if (group == "affine-F7") return detail::check_certificate_as<AffineElement<ModP<7>>>(j);
    if (group == "affine-F11") return detail::check_certificate_as<AffineElement<ModP<11>>>(j);
    if (group == "affine-F13") return detail::check_certificate_as<AffineElement<ModP<13>>>(j);
    if (group == "sl2v") return detail::check_certificate_as<Sl2VElement>(j);
    if (group == "gsp-heisenberg") return detail::check_certificate_as<GSpHeisenbergElement>(j);
    if (group == "complex-heisenberg") return detail::check_certificate_as<ComplexHeisenbergSemidirect>(j);
    return "unknown group '" + group + "'";
  } catch (const std::exception& e) {
    return std::string("malformed certificate: ") + e.what();
  }
}

// ---------------------------------------------------------------------------
// Digest

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Digest over the canonical dump (sorted keys) of everything but "digest".
inline std::string report_digest(json report) {
  report.erase("digest");
  return hex64(fnv1a64(report.dump()));
}

inline void seal(json& report) { report["digest"] = report_digest(report); }

}  // namespace ratreal::io
