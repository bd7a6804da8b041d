#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "acheck/field.hpp"
#include "acheck/univariate.hpp"

namespace acheck {

enum class VarKind : std::uint8_t { Known, Temp, Output, Aux };

using KindMask = std::uint8_t;
constexpr KindMask kind_bit(VarKind k) { return static_cast<KindMask>(1u << static_cast<unsigned>(k)); }
constexpr KindMask kKnownKinds = kind_bit(VarKind::Known);
// U together with auxiliaries introduced by degree reduction.
constexpr KindMask kUnknownKinds = kind_bit(VarKind::Temp) | kind_bit(VarKind::Output) | kind_bit(VarKind::Aux);

inline bool is_unknown(VarKind k) { return (kind_bit(k) & kUnknownKinds) != 0; }
const char* to_string(VarKind k);

// Identity is the index; the kind travels with it so that degree and
// coefficient queries need no system lookup.
struct VarId {
  std::uint32_t index = 0;
  VarKind kind = VarKind::Temp;

  friend bool operator==(VarId a, VarId b) { return a.index == b.index; }
  friend auto operator<=>(VarId a, VarId b) { return a.index <=> b.index; }
};

class Monomial {
 public:
  using Factor = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  static Monomial of(VarId v, std::uint32_t exp = 1);
  // Factors may be unsorted and repeated; zero exponents are dropped.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(KindMask kinds) const;
  std::uint32_t exponent(std::uint32_t var_index) const;
  bool contains(std::uint32_t var_index) const { return exponent(var_index) != 0; }
  // Splits into (factors whose kind is in `kinds`, the rest).
  std::pair<Monomial, Monomial> split(KindMask kinds) const;

  bool divides(const Monomial& other) const;
  // Requires divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  Monomial without(std::uint32_t var_index) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;
  // Canonical storage order, not a term order.
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.factors_ <=> b.factors_; }

  std::string to_string(const std::function<std::string(VarId)>& name) const;

 private:
  std::vector<Factor> factors_;  // sorted by index, exponents > 0
};

// A term order. Variables listed in `priority` rank highest, in list order;
// the remaining variables follow by ascending index.
class MonomialOrder {
 public:
  enum class Tag { GrevLex, Lex };

  static MonomialOrder grevlex(std::vector<std::uint32_t> priority = {});
  static MonomialOrder lex(std::vector<std::uint32_t> priority = {});

  Tag tag() const { return tag_; }
  const std::vector<std::uint32_t>& priority() const { return priority_; }
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
  std::uint64_t rank(std::uint32_t var_index) const;

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.tag_ == b.tag_ && a.priority_ == b.priority_;
  }

 private:
  MonomialOrder(Tag tag, std::vector<std::uint32_t> priority);

  Tag tag_;
  std::vector<std::uint32_t> priority_;
  std::unordered_map<std::uint32_t, std::uint64_t> rank_;
};

using Binding = std::map<std::uint32_t, FieldElement>;

class Polynomial {
 public:
  using Term = std::pair<Monomial, FieldElement>;
  using TermMap = std::map<Monomial, FieldElement>;

  explicit Polynomial(const Prime& p) : prime_(p) {}
  static Polynomial constant(const FieldElement& c);
  static Polynomial constant(const Prime& p, long c) { return constant(FieldElement(p, c)); }
  static Polynomial variable(const Prime& p, VarId v);
  static Polynomial term(const Monomial& m, const FieldElement& c);

  const Prime& prime() const { return prime_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // The coefficient of the monomial 1.
  FieldElement constant_term() const;
  FieldElement coefficient(const Monomial& m) const;

  // Adds c*m in place; removes the term if it cancels.
  void add_term(const Monomial& m, const FieldElement& c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial scaled(const FieldElement& c) const;
  Polynomial times_monomial(const Monomial& m, const FieldElement& c) const;
  Polynomial pow(std::uint32_t e) const;

  std::uint32_t total_degree() const;
  std::uint32_t degree_in(KindMask kinds) const;
  // Sorted by index, deduplicated.
  std::vector<VarId> variables() const;
  bool only_kinds(KindMask kinds) const;
  bool contains(std::uint32_t var_index) const;

  // Groups terms by their unknown part: p = sum over m of coeff(m) * m where
  // every m is a monomial in unknowns and every coeff is a polynomial in K.
  std::map<Monomial, Polynomial> collect_by_unknowns() const;

  Polynomial substitute(const Binding& binding) const;
  // Replaces variables by polynomials.
  Polynomial substitute(const std::map<std::uint32_t, Polynomial>& replacement) const;
  // Every variable must be bound.
  FieldElement evaluate(const Binding& binding) const;

  std::vector<Term> sorted_terms(const MonomialOrder& order) const;
  std::optional<Term> leading_term(const MonomialOrder& order) const;

  // Univariate view in `var`; nullopt when another variable occurs.
  std::optional<univariate::Dense> as_univariate(std::uint32_t var_index) const;
  static Polynomial from_univariate(const Prime& p, VarId v, const univariate::Dense& f);

  // Exact quotient when `divisor` divides this polynomial.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;
  // Scales so the leading coefficient (grevlex on indices) is one.
  Polynomial monic() const;

  std::string to_string(const std::function<std::string(VarId)>& name) const;
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.prime_ == b.prime_ && a.terms_ == b.terms_;
  }

 private:
  Prime prime_;
  TermMap terms_;
};

std::string default_var_name(VarId v);

}  // namespace acheck
