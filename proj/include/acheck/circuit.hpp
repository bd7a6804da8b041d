#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acheck/poly.hpp"

namespace acheck {

struct Variable {
  VarId id;
  std::string name;
};

// The constraint view of a circuit: variables partitioned into known inputs
// K, temporaries T, outputs O (plus degree-reduction auxiliaries), and a list
// of polynomials each read as "= 0". Variable indices are positions in
// variables().
class ConstraintSystem {
 public:
  explicit ConstraintSystem(const Prime& p) : prime_(p) {}

  const Prime& prime() const { return prime_; }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Polynomial>& constraints() const { return constraints_; }

  // Throws UsageError on a duplicate name.
  VarId add_variable(const std::string& name, VarKind kind);
  void add_constraint(Polynomial p);
  void set_constraints(std::vector<Polynomial> ps);

  std::optional<VarId> find(const std::string& name) const;
  const Variable& variable(std::uint32_t index) const { return variables_.at(index); }
  const std::string& name(VarId v) const { return variables_.at(v.index).name; }
  std::function<std::string(VarId)> namer() const;

  std::vector<VarId> of_kinds(KindMask kinds) const;
  std::vector<VarId> known() const { return of_kinds(kKnownKinds); }
  std::vector<VarId> outputs() const { return of_kinds(kind_bit(VarKind::Output)); }
  // U together with auxiliaries.
  std::vector<VarId> unknowns() const { return of_kinds(kUnknownKinds); }

  Polynomial var(VarId v) const { return Polynomial::variable(prime_, v); }
  Polynomial constant(long c) const { return Polynomial::constant(prime_, c); }

  // Copy with variable kinds changed; constraints are rewritten so the kinds
  // carried inside monomials stay consistent.
  ConstraintSystem with_kinds(const std::map<std::uint32_t, VarKind>& kinds) const;
  // Copy with every constraint substituted and zero polynomials dropped.
  ConstraintSystem substituted(const Binding& b) const;
  ConstraintSystem substituted(const std::map<std::uint32_t, Polynomial>& r) const;

  std::string to_string() const;

 private:
  Prime prime_;
  std::vector<Variable> variables_;
  std::map<std::string, std::uint32_t> by_name_;
  std::vector<Polynomial> constraints_;
};

enum class ConstraintClass { PreciselyLinear, KCoefficientLinear, HigherOrder };
enum class CircuitClass { PreciselyLinear, KCoefficient, HigherOrder };

const char* to_string(ConstraintClass c);
const char* to_string(CircuitClass c);

ConstraintClass classify_constraint(const Polynomial& p);
// Throws UsageError for an empty constraint list.
CircuitClass classify_circuit(const ConstraintSystem& sys);

// Rewrites constraints until every one has degree at most 2 in the unknowns.
// A variable square v^2 inside an over-degree monomial becomes a fresh Aux a
// with the definition v^2 - a appended; monomials without squares have their
// first two unknowns paired instead. Throws FormatError if more than
// `max_rounds` auxiliaries would be needed.
ConstraintSystem reduce_degree(const ConstraintSystem& sys, int max_rounds = 64);

// R1CS wire layout: wire 0 is the constant one, then public outputs, public
// inputs, private inputs, and internal wires.
struct WireMetadata {
  std::uint32_t n_wires = 0;
  std::uint32_t n_pub_out = 0;
  std::uint32_t n_pub_in = 0;
  std::uint32_t n_prv_in = 0;
};

struct VariablePartition {
  std::vector<std::uint32_t> known;   // wire ids
  std::vector<std::uint32_t> temp;
  std::vector<std::uint32_t> output;
};

// Throws FormatError when the declared ranges overlap or exceed the wire count.
VariablePartition partition_variables(const WireMetadata& meta);

}  // namespace acheck
