#pragma once

// Scenario documents in, sealed certificate reports out, and the independent
// report checker.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ratreal/affine_rational.hpp"
#include "ratreal/heisenberg.hpp"
#include "ratreal/io.hpp"
#include "ratreal/sl2.hpp"
#include "ratreal/solvable.hpp"

namespace ratreal::report {

using io::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct RunOptions {
  std::uint64_t seed = kDefaultSeed;
  long bound = kDefaultOrderBound;
};

namespace detail {

inline json order_json(const OrderResult& o) { return o.is_finite() ? json(o.value()) : json("infinite"); }

inline std::vector<json> element_list(const json& scenario) {
  if (!scenario.contains("elements")) return {};
  const json& e = scenario.at("elements");
  if (!e.is_array()) throw ParseError("'elements' must be an array");
  return {e.begin(), e.end()};
}

inline long int_field(const json& j, const char* key, long fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw ParseError(std::string("'") + key + "' must be an integer");
  return j.at(key).get<long>();
}

// --- finite -----------------------------------------------------------------

template <std::uint32_t P>
json run_finite(const json& scenario, const RunOptions& opt) {
  using F = ModP<P>;
  using A = AffineElement<F>;
  using M = MatrixElement<F>;
  std::vector<A> gens;
  for (const auto& g : io::field(scenario, "generators")) gens.push_back(io::Codec<A>::decode(g));
  if (gens.empty()) throw UsageError("finite scenario needs generators");
  const std::size_t cap = static_cast<std::size_t>(int_field(scenario, "cap", 20000));
  const auto group = generate_closure(gens, cap);
  std::vector<M> linear_gens;
  for (const auto& g : gens) linear_gens.emplace_back(g.linear());
  const auto linear = generate_closure(linear_gens, cap);

  json out;
  out["group_order"] = group.order();
  out["linear_group_order"] = linear.order();
  json classes = json::array();
  for (const auto& cls : rational_classes(linear)) {
    json members = json::array();
    for (auto i : cls) members.push_back(io::to_json(linear.elements()[i].matrix()));
    classes.push_back({{"size", cls.size()}, {"members", members}});
  }
  out["linear_rational_classes"] = classes;

  // preferred linear witnesses h with h x h^-1 = x^k
  std::vector<std::tuple<Matrix<F>, long, Matrix<F>>> hints;
  if (scenario.contains("linear_hints"))
    for (const auto& h : scenario.at("linear_hints"))
      hints.emplace_back(io::matrix_from<F>(io::field(h, "x")), io::field(h, "k").get<long>(),
                         io::matrix_from<F>(io::field(h, "h")));

  std::vector<A> elements;
  if (scenario.contains("elements") && scenario.at("elements") == "all") {
    elements = group.elements();
  } else {
    for (const auto& e : element_list(scenario)) elements.push_back(io::Codec<A>::decode(e));
  }

  json entries = json::array();
  for (const auto& g : elements) {
    if (!group.contains(g)) throw UsageError("element not in the generated group: " + g.key());
    const long m = element_order(g, static_cast<long>(group.order())).value();
    json entry{{"element", io::Codec<A>::encode(g)}, {"order", m}};
    json certs = json::array();
    auto real = is_real_bruteforce(group, g);
    entry["real"] = real.has_value();
    if (real) certs.push_back(io::encode_certificate(*real));
    auto rational = is_rational_bruteforce(group, g);
    entry["rational"] = rational.has_value();
    if (rational)
      for (const auto& [k, c] : *rational) certs.push_back(io::encode_certificate(c));
    entry["certificates"] = certs;

    // the constructive route: linear witness, then the translation solve
    json constructive;
    const Matrix<F>& x = g.linear();
    if (has_fixed_point(x)) {
      constructive = {{"applicable", false}, {"reason", "x fixes a nonzero vector"}};
    } else {
      const long mx = element_order(M(x), static_cast<long>(linear.order())).value();
      json ccerts = json::array();
      bool all = true;
      for (long k : coprime_exponents(mx)) {
        std::optional<Matrix<F>> h;
        for (const auto& [hx, hk, hh] : hints)
          if (hx == x && hk == k && hh * x * inverse(hh) == matrix_power(x, k)) h = hh;
        if (!h)
          if (auto c = find_power_witness_bruteforce(linear, M(x), k)) h = c->witness().matrix();
        if (!h) {
          all = false;
          break;
        }
        ccerts.push_back(io::encode_certificate(make_power_witness(x, g.translation(), *h, k)));
      }
      constructive = {{"applicable", true}, {"rational", all}, {"certificates", all ? ccerts : json::array()}};
      if (all != rational.has_value())
        throw TheoremViolation("constructive and brute-force rationality disagree for " + g.key());
    }
    entry["constructive"] = constructive;
    entries.push_back(std::move(entry));
  }
  (void)opt;
  out["entries"] = entries;
  return out;
}

inline json run_finite_dispatch(const json& scenario, const RunOptions& opt) {
  switch (int_field(scenario, "p", 0)) {
    case 2: return run_finite<2>(scenario, opt);
    case 3: return run_finite<3>(scenario, opt);
    case 5: return run_finite<5>(scenario, opt);
    case 7: return run_finite<7>(scenario, opt);
    case 11: return run_finite<11>(scenario, opt);
    case 13: return run_finite<13>(scenario, opt);
    default: throw UsageError("finite scenarios support p in {2, 3, 5, 7, 11, 13}");
  }
}

// --- sl2v -------------------------------------------------------------------

inline json run_sl2v(const json& scenario, const RunOptions& opt) {
  const int n = static_cast<int>(int_field(scenario, "n", -1));
  if (n < 0) throw UsageError("sl2v scenario needs n >= 0");
  NegationSearchFamilies families;
  if (scenario.contains("t_grid")) {
    families.t_grid.clear();
    for (const auto& t : scenario.at("t_grid")) families.t_grid.push_back(io::scalar_from<Rational>(t));
  }
  const Rational t = scenario.contains("t") ? io::scalar_from<Rational>(scenario.at("t")) : Rational(1);

  json entries = json::array();
  for (const auto& e : element_list(scenario)) {
    const SL2Element x = e.contains("r") ? SL2Element::diagonal(io::scalar_from<Rational>(e.at("r")))
                                         : SL2Element::from_matrix(io::matrix_from<Rational>(io::field(e, "x")));
    const PolyVector v(n, io::vector_from<Rational>(io::field(e, "v")));
    const auto real = classify_real(x, v, t, families);
    const auto rational = classify_rational_sl2v(x, v, opt.bound, t, families);
    json certs = json::array();
    if (real.certificate) certs.push_back(io::encode_certificate(*real.certificate));
    for (const auto& [k, c] : rational.certificates)
      if (k >= 1) certs.push_back(io::encode_certificate(c));
    entries.push_back({{"element", io::Codec<Sl2VElement>::encode(Sl2VElement(x, v.coeffs))},
                       {"real", to_string(real.verdict)},
                       {"real_reason", real.reason},
                       {"order", order_json(rational.order)},
                       {"rational", to_string(rational.verdict)},
                       {"rational_reason", rational.reason},
                       {"certificates", certs}});
  }
  return {{"entries", entries}};
}

// --- affine -----------------------------------------------------------------

inline json run_affine(const json& scenario, const RunOptions& opt) {
  using Q = Rational;
  json entries = json::array();
  for (const auto& e : element_list(scenario)) {
    const Matrix<Q> x = io::matrix_from<Q>(io::field(e, "x"));
    const Vector<Q> v = io::vector_from<Q>(io::field(e, "v"));
    const AffineElement<Q> subject(x, v);
    json entry{{"element", io::Codec<AffineElement<Q>>::encode(subject)}};
    const auto mx = element_order(MatrixElement<Q>(x), opt.bound);
    if (!mx.is_finite()) {
      entry["verdict"] = "Refused";
      entry["reason"] = "x has infinite order (or order above the bound)";
      entry["certificates"] = json::array();
      entries.push_back(std::move(entry));
      continue;
    }
    const long m = mx.value();
    entry["x_order"] = m;
    const auto lin = rationality_certificates_linear(x, m, opt.seed);
    if (!lin.rational()) {
      entry["verdict"] = "Refused";
      entry["reason"] = lin.refuted.empty() ? "no invertible linear witness sampled (inconclusive)"
                                            : "x is not rational in GL(n, Q)";
      entry["certificates"] = json::array();
      entries.push_back(std::move(entry));
      continue;
    }
    const auto r = classify_affine_rational(x, v, m, lin.witnesses);
    json certs = json::array();
    for (const auto& [k, c] : r.certificates) certs.push_back(io::encode_certificate(c));
    json growth = json::array();
    for (const auto& [l, coords] : r.kernel_growth) growth.push_back({{"l", l}, {"kernel", io::to_json(coords)}});
    entry["verdict"] = r.rational() ? "Rational" : "Partial";
    entry["route"] = to_string(r.route);
    entry["order"] = order_json(r.order);
    entry["kernel_component"] = io::to_json(r.kernel_component);
    entry["kernel_growth"] = growth;
    entry["reason"] = r.reason;
    entry["certificates"] = certs;
    entries.push_back(std::move(entry));
  }
  return {{"entries", entries}};
}

// --- heisenberg -------------------------------------------------------------

inline json run_heisenberg(const json& scenario, const RunOptions& opt) {
  using Q = Rational;
  const GSpElement x = scenario.contains("x") ? GSpElement(io::matrix_from<Q>(scenario.at("x"))) : gsp_demo_x();
  const GSpElement h = scenario.contains("h") ? GSpElement(io::matrix_from<Q>(scenario.at("h"))) : gsp_demo_y();
  const auto p = heisenberg_presentation(x.dim());
  std::vector<HeisenbergElement> ns;
  for (const auto& e : element_list(scenario))
    ns.emplace_back(io::vector_from<Q>(io::field(e, "v")), io::scalar_from<Q>(io::field(e, "t")));
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 7);
  for (long i = 0; i < int_field(scenario, "samples", 0); ++i) {
    Vector<Q> v(x.dim());
    for (std::size_t j = 0; j < v.dim(); ++j) v[j] = Q(num(rng), den(rng));
    ns.emplace_back(v, Q(num(rng), den(rng)));
  }
  json entries = json::array();
  for (const auto& n : ns) {
    auto cert = real_witness_via_lift(x, n, p, h);
    entries.push_back({{"element", io::Codec<GSpHeisenbergElement>::encode(cert.subject())},
                       {"real", true},
                       {"certificates", json::array({io::encode_certificate(cert)})}});
  }
  return {{"mu", x.mu().to_string()}, {"entries", entries}};
}

// --- solvable (complex Heisenberg) -------------------------------------------

inline json run_solvable(const json& scenario, const RunOptions& opt) {
  using G = GaussianRational;
  const G lambda = scenario.contains("lambda") ? io::scalar_from<G>(scenario.at("lambda")) : G(1);
  std::vector<G> grid{G(1), G(-1), G(2), G::i()};
  if (scenario.contains("lambda_grid")) {
    grid.clear();
    for (const auto& l : scenario.at("lambda_grid")) grid.push_back(io::scalar_from<G>(l));
  }
  struct Item {
    ComplexHeisenbergElement n;
    int x;
  };
  std::vector<Item> items;
  for (const auto& e : element_list(scenario))
    items.push_back({ComplexHeisenbergElement(io::scalar_from<G>(io::field(e, "a")), io::scalar_from<G>(io::field(e, "b")),
                                              io::scalar_from<G>(io::field(e, "c"))),
                     static_cast<int>(int_field(e, "x", -1))});
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  auto q = [&] { return G(Rational(num(rng), den(rng)), Rational(num(rng), den(rng))); };
  for (long i = 0; i < int_field(scenario, "samples", 0); ++i) {
    G a = q(), b = q();
    G c = i % 3 == 0 ? a * b / G(2) : q();
    items.push_back({ComplexHeisenbergElement(a, b, c), -1});
  }
  json entries = json::array();
  for (const auto& item : items) {
    auto r = complex_heisenberg_reality(item.n, item.x, lambda, grid);
    json certs = json::array();
    if (r.certificate) certs.push_back(io::encode_certificate(*r.certificate));
    entries.push_back({{"element", io::Codec<ComplexHeisenbergSemidirect>::encode(
                                       ComplexHeisenbergSemidirect(UnitElement<G>(G(item.x)), item.n))},
                       {"real", r.real},
                       {"residual", r.residual.to_string()},
                       {"reason", r.reason},
                       {"certificates", certs}});
  }
  return {{"entries", entries}};
}

}  // namespace detail

inline const std::set<std::string>& known_kinds() {
  static const std::set<std::string> kinds{"finite", "sl2v", "affine", "heisenberg", "solvable"};
  return kinds;
}

/// Runs a scenario and returns the sealed report. Malformed scenarios raise
/// ParseError or UsageError; failed checks raise VerificationError.
inline json run_scenario(const json& scenario, const RunOptions& opt = {}) {
  if (!scenario.is_object()) throw ParseError("scenario must be a JSON object");
  if (detail::int_field(scenario, "schema_version", -1) != kSchemaVersion)
    throw ParseError("unsupported or missing schema_version (expected " + std::to_string(kSchemaVersion) + ")");
  const std::string kind = io::field(scenario, "kind").get<std::string>();
  if (!known_kinds().count(kind)) throw UsageError("unknown scenario kind '" + kind + "'");

  json body;
  if (kind == "finite") body = detail::run_finite_dispatch(scenario, opt);
  else if (kind == "sl2v") body = detail::run_sl2v(scenario, opt);
  else if (kind == "affine") body = detail::run_affine(scenario, opt);
  else if (kind == "heisenberg") body = detail::run_heisenberg(scenario, opt);
  else body = detail::run_solvable(scenario, opt);

  json report = body;
  report["schema_version"] = kSchemaVersion;
  report["kind"] = kind;
  report["scenario"] = scenario;
  report["seed"] = opt.seed;
  report["bound"] = opt.bound;
  std::size_t count = 0;
  for (const auto& e : report.at("entries")) count += e.at("certificates").size();
  report["certificate_count"] = count;
  io::seal(report);
  return report;
}

namespace detail {

inline std::set<std::string> relations_of(const json& certs) {
  std::set<std::string> out;
  for (const auto& c : certs) out.insert(c.at("relation").get<std::string>());
  return out;
}

inline std::set<std::string> power_set(long m) {
  std::set<std::string> out;
  for (long k : coprime_exponents(m)) out.insert(Relation::power(k).to_string());
  return out;
}

inline std::set<std::string> without_inverse(std::set<std::string> s) {
  s.erase("inverse");
  return s;
}

// verdict fields must agree with the certificates actually present
inline std::string check_entry(const std::string& kind, const json& entry) {
  const json& certs = entry.at("certificates");
  const auto rels = relations_of(certs);
  for (const auto& c : certs)
    if (c.at("subject") != entry.at("element")) return "certificate subject differs from the entry element";
  if (kind == "finite") {
    const long m = entry.at("order").get<long>();
    if (entry.at("real").get<bool>() != (rels.count("inverse") > 0)) return "real flag disagrees with certificates";
    const bool rational = entry.at("rational").get<bool>();
    if (rational != (without_inverse(rels) == power_set(m)))
      return "rational flag disagrees with the certified exponents";
    if (!rational && !without_inverse(rels).empty()) return "non-rational entry carries power certificates";
    const json& con = entry.at("constructive");
    if (con.at("applicable").get<bool>()) {
      const auto crels = relations_of(con.at("certificates"));
      for (const auto& c : con.at("certificates"))
        if (c.at("subject") != entry.at("element")) return "constructive certificate subject differs";
      if (con.at("rational").get<bool>() != rational) return "constructive verdict disagrees with brute force";
      if (con.at("rational").get<bool>() && crels != power_set(m)) return "constructive exponents incomplete";
    }
  } else if (kind == "sl2v") {
    if ((entry.at("real") == "Real") != (rels.count("inverse") > 0)) return "real verdict disagrees with certificates";
    const bool rational = entry.at("rational") == "Rational";
    const json& order = entry.at("order");
    if (order.is_number_integer()) {
      if (rational != (without_inverse(rels) == power_set(order.get<long>())))
        return "rational verdict disagrees with the certified exponents";
    } else if (rational != (rels.count("inverse") > 0)) {
      return "infinite order: rational verdict must match reality";
    }
  } else if (kind == "affine") {
    const std::string verdict = entry.at("verdict").get<std::string>();
    if ((verdict == "Rational") != !certs.empty()) return "verdict disagrees with certificates";
    if (verdict == "Rational") {
      const json& order = entry.at("order");
      if (order.is_number_integer() ? rels != power_set(order.get<long>()) : rels != std::set<std::string>{"inverse"})
        return "certified relations do not match the order";
    }
  } else {
    if (entry.at("real").get<bool>() != (rels == std::set<std::string>{"inverse"}))
      return "real flag disagrees with certificates";
  }
  return {};
}

}  // namespace detail

struct VerifyResult {
  std::size_t certificates_checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Digest, every certificate by re-multiplication, and verdict consistency.
inline VerifyResult verify_report(const json& report) {
  VerifyResult out;
  auto fail = [&](std::string what) { out.failures.push_back(std::move(what)); };
  try {
    if (!report.is_object()) {
      fail("report is not an object");
      return out;
    }
    if (!report.contains("digest") || !report.at("digest").is_string() || report.at("digest") != io::report_digest(report))
      fail("digest mismatch");
    if (report.value("schema_version", json()) != json(kSchemaVersion)) fail("unsupported schema_version");
    const std::string kind = io::field(report, "kind").get<std::string>();
    if (!known_kinds().count(kind)) fail("unknown kind");
    const json& entries = io::field(report, "entries");
    std::size_t count = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const json& entry = entries[i];
      std::vector<std::pair<std::string, const json*>> certs;
      for (std::size_t c = 0; c < entry.at("certificates").size(); ++c)
        certs.emplace_back("entries[" + std::to_string(i) + "].certificates[" + std::to_string(c) + "]",
                           &entry.at("certificates")[c]);
      if (entry.contains("constructive") && entry.at("constructive").contains("certificates"))
        for (std::size_t c = 0; c < entry.at("constructive").at("certificates").size(); ++c)
          certs.emplace_back("entries[" + std::to_string(i) + "].constructive.certificates[" + std::to_string(c) + "]",
                             &entry.at("constructive").at("certificates")[c]);
      for (const auto& [where, cert] : certs) {
        ++out.certificates_checked;
        ++count;
        if (auto why = io::check_certificate(*cert); !why.empty()) fail(where + ": " + why);
      }
      if (auto why = detail::check_entry(kind, entry); !why.empty()) fail("entries[" + std::to_string(i) + "]: " + why);
    }
    if (report.value("certificate_count", json()) != json(count - [&] {
          std::size_t constructive = 0;
          for (const auto& e : entries)
            if (e.contains("constructive") && e.at("constructive").contains("certificates"))
              constructive += e.at("constructive").at("certificates").size();
          return constructive;
        }()))
      fail("certificate_count mismatch");
  } catch (const std::exception& e) {
    fail(std::string("malformed report: ") + e.what());
  }
  return out;
}

}  // namespace ratreal::report
