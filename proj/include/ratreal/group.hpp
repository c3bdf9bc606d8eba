#pragma once

// Generic group-element contract, finite closure, orders, and the brute-force
// reality/rationality oracle.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ratreal/errors.hpp"

namespace ratreal {

/// Anything with an associative product, inverses, exact equality and a
/// canonical string key (used for hashing in enumerations).
template <class G>
concept GroupElement = std::copyable<G> && std::equality_comparable<G> && requires(const G& a, const G& b) {
  { a * b } -> std::convertible_to<G>;
  { a.inverse() } -> std::convertible_to<G>;
  { a.key() } -> std::convertible_to<std::string>;
};

template <GroupElement G>
G identity_of(const G& g) {
  return g * g.inverse();
}

template <GroupElement G>
G group_power(const G& g, long k) {
  G base = k < 0 ? g.inverse() : g;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  G result = identity_of(g);
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

template <GroupElement G>
G conjugate(const G& by, const G& s) {
  return by * s * by.inverse();
}

/// The relation a certificate witnesses: g s g^-1 = s^-1 or g s g^-1 = s^k.
struct Relation {
  enum class Kind { Inverse, Power };
  Kind kind = Kind::Inverse;
  long k = -1;

  static Relation inverse() { return {Kind::Inverse, -1}; }
  static Relation power(long k) { return {Kind::Power, k}; }

  long exponent() const { return kind == Kind::Inverse ? -1 : k; }

  template <GroupElement G>
  G target(const G& s) const {
    return kind == Kind::Inverse ? s.inverse() : group_power(s, k);
  }

  std::string to_string() const { return kind == Kind::Inverse ? "inverse" : "power:" + std::to_string(k); }

  friend bool operator==(const Relation&, const Relation&) = default;
};

/// A conjugating element together with the relation it satisfies. The only
/// way to obtain one is through make(), which re-multiplies exactly.
template <GroupElement G>
class Certificate {
 public:
  static std::optional<Certificate> try_make(G subject, G witness, Relation relation) {
    if (conjugate(witness, subject) != relation.target(subject)) return std::nullopt;
    return Certificate(std::move(subject), std::move(witness), relation);
  }

  static Certificate make(G subject, G witness, Relation relation) {
    auto c = try_make(subject, witness, relation);
    if (!c) throw VerificationError("certificate fails exact re-multiplication (" + relation.to_string() + ")");
    return *std::move(c);
  }

  const G& subject() const { return subject_; }
  const G& witness() const { return witness_; }
  const Relation& relation() const { return relation_; }
  bool verified() const { return verified_; }

  /// Independent re-check, for consumers that want to see it happen.
  bool reverify() const { return conjugate(witness_, subject_) == relation_.target(subject_); }

 private:
  Certificate(G subject, G witness, Relation relation)
      : subject_(std::move(subject)), witness_(std::move(witness)), relation_(relation), verified_(true) {}

  G subject_;
  G witness_;
  Relation relation_;
  bool verified_ = false;
};

/// Finite(m) or ExceedsBound(bound).
class OrderResult {
 public:
  static OrderResult finite(long m) { return OrderResult(m, 0); }
  static OrderResult exceeds(long bound) { return OrderResult(0, bound); }

  bool is_finite() const { return order_ > 0; }
  long value() const {
    if (!is_finite()) throw UsageError("order exceeds bound " + std::to_string(bound_));
    return order_;
  }
  long bound() const { return bound_; }

  friend bool operator==(const OrderResult&, const OrderResult&) = default;

 private:
  OrderResult(long order, long bound) : order_(order), bound_(bound) {}
  long order_;
  long bound_;
};

inline constexpr long kDefaultOrderBound = 10000;

template <GroupElement G>
OrderResult element_order(const G& g, long bound = kDefaultOrderBound) {
  if (bound < 1) throw UsageError("element_order: bound must be >= 1");
  const G e = identity_of(g);
  G p = g;
  for (long k = 1; k <= bound; ++k) {
    if (p == e) return OrderResult::finite(k);
    p = p * g;
  }
  return OrderResult::exceeds(bound);
}

/// Exponents k in [1, m) coprime to m; {1} when m == 1.
inline std::vector<long> coprime_exponents(long m) {
  std::vector<long> ks;
  for (long k = 1; k < std::max(m, 2L); ++k)
    if (std::gcd(k, m) == 1) ks.push_back(k);
  return ks;
}

/// A subgroup stored as an explicit element list in BFS order from the
/// identity. Immutable after construction.
template <GroupElement G>
class FiniteGroup {
 public:
  FiniteGroup(std::vector<G> elements, std::vector<G> generators)
      : elements_(std::move(elements)), generators_(std::move(generators)) {
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].key(), i);
  }

  std::size_t order() const { return elements_.size(); }
  const std::vector<G>& elements() const { return elements_; }
  const std::vector<G>& generators() const { return generators_; }
  const G& identity() const { return elements_.front(); }

  bool contains(const G& g) const { return index_.count(g.key()) > 0; }
  std::size_t index_of(const G& g) const {
    auto it = index_.find(g.key());
    if (it == index_.end()) throw UsageError("element not in group: " + g.key());
    return it->second;
  }

 private:
  std::vector<G> elements_;
  std::vector<G> generators_;
  std::unordered_map<std::string, std::size_t> index_;
};

template <GroupElement G>
FiniteGroup<G> generate_closure(const std::vector<G>& generators, std::size_t cap) {
  if (generators.empty()) throw UsageError("generate_closure needs at least one generator");
  std::vector<G> elements{identity_of(generators.front())};
  std::unordered_map<std::string, std::size_t> seen{{elements.front().key(), 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& s : generators) {
      G next = elements[head] * s;
      if (seen.emplace(next.key(), elements.size()).second) {
        elements.push_back(std::move(next));
        if (elements.size() > cap)
          throw CapExceededError("closure exceeds cap of " + std::to_string(cap) + " elements");
      }
    }
  }
  return FiniteGroup<G>(std::move(elements), generators);
}

/// First h in enumeration order with h g h^-1 = g^-1.
template <GroupElement G>
std::optional<Certificate<G>> is_real_bruteforce(const FiniteGroup<G>& group, const G& g) {
  if (!group.contains(g)) throw UsageError("is_real_bruteforce: element not in group");
  const G target = g.inverse();
  for (const auto& h : group.elements())
    if (conjugate(h, g) == target) return Certificate<G>::make(g, h, Relation::inverse());
  return std::nullopt;
}

template <GroupElement G>
std::optional<Certificate<G>> find_power_witness_bruteforce(const FiniteGroup<G>& group, const G& g, long k) {
  const G target = group_power(g, k);
  for (const auto& h : group.elements())
    if (conjugate(h, g) == target) return Certificate<G>::make(g, h, Relation::power(k));
  return std::nullopt;
}

/// For every k coprime to Ord(g) a witness for g ~ g^k, or nothing as soon
/// as one k has none.
template <GroupElement G>
std::optional<std::map<long, Certificate<G>>> is_rational_bruteforce(const FiniteGroup<G>& group, const G& g) {
  if (!group.contains(g)) throw UsageError("is_rational_bruteforce: element not in group");
  const long m = element_order(g, static_cast<long>(group.order())).value();
  std::map<long, Certificate<G>> out;
  for (long k : coprime_exponents(m)) {
    auto c = find_power_witness_bruteforce(group, g, k);
    if (!c) return std::nullopt;
    out.emplace(k, *std::move(c));
  }
  return out;
}

namespace detail {
struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<std::size_t>> groups() {
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t i = 0; i < parent.size(); ++i) by_root[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : by_root) out.push_back(std::move(members));
    return out;
  }
};
}  // namespace detail

/// Conjugacy classes as index lists, ordered by their first element.
template <GroupElement G>
std::vector<std::vector<std::size_t>> conjugacy_classes(const FiniteGroup<G>& group) {
  detail::DisjointSets sets(group.order());
  for (std::size_t i = 0; i < group.order(); ++i)
    for (const auto& h : group.elements()) sets.unite(i, group.index_of(conjugate(h, group.elements()[i])));
  return sets.groups();
}

/// Rational classes: g and g^k are merged for every k coprime to Ord(g), on
/// top of conjugacy. Always a coarsening of conjugacy_classes.
template <GroupElement G>
std::vector<std::vector<std::size_t>> rational_classes(const FiniteGroup<G>& group) {
  detail::DisjointSets sets(group.order());
  for (const auto& cls : conjugacy_classes(group))
    for (auto i : cls) sets.unite(cls.front(), i);
  const long bound = static_cast<long>(group.order());
  for (std::size_t i = 0; i < group.order(); ++i) {
    const G& g = group.elements()[i];
    const long m = element_order(g, bound).value();
    for (long k : coprime_exponents(m)) sets.unite(i, group.index_of(group_power(g, k)));
  }
  return sets.groups();
}

}  // namespace ratreal
