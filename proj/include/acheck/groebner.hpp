#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "acheck/circuit.hpp"
#include "acheck/poly.hpp"
#include "acheck/verdict.hpp"

namespace acheck {

enum class CoefficientDomain {
  // Every variable is a ring variable; coefficients are in F_p.
  ConstantField,
  // Known variables are parameters: coefficients live in F_p(K) and every
  // nonconstant leading coefficient that gets inverted is recorded in the ledger.
  RationalInK,
};

struct GbLimits {
  std::size_t max_basis = 4000;
  std::uint64_t max_pairs = 200000;
  // Numerator plus denominator terms of one F_p(K) coefficient.
  std::size_t max_coefficient_terms = 400;
  const CheckContext* ctx = nullptr;  // deadline source, optional
};

struct GroebnerBasis {
  // Reduced basis sorted by descending leading monomial. Constant-field
  // generators are monic; RationalInK generators have denominators cleared.
  std::vector<Polynomial> generators;
  MonomialOrder order = MonomialOrder::grevlex();
  CoefficientDomain domain = CoefficientDomain::ConstantField;
  // Monic nonconstant K-polynomials assumed nonzero (RationalInK only).
  std::vector<Polynomial> ledger;
  std::uint64_t pairs_considered = 0;
  std::uint64_t pairs_pruned = 0;

  bool is_unit() const;
};

// Buchberger's algorithm with the product and chain criteria and
// lowest-lcm-degree pair selection. Throws UsageError on an empty input list
// and ResourceExhausted when a limit is hit.
GroebnerBasis buchberger(const std::vector<Polynomial>& polys, const MonomialOrder& order,
                         CoefficientDomain domain = CoefficientDomain::ConstantField, const GbLimits& limits = {});

// Full normal form over F_p (all variables are ring variables).
Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& divisors, const MonomialOrder& order);
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

struct Determinacy {
  std::set<std::uint32_t> determined;  // unknown variable indices
  // K-polynomial coefficients of the determining equations, assumed nonzero.
  std::vector<Polynomial> assumptions;
};

// Fixpoint of: u is determined when some generator is linear in u with a
// coefficient in K only, and its other unknowns are already determined.
Determinacy triangular_determinacy(const std::vector<Polynomial>& generators);

// F_p solutions of a polynomial system found by univariate root splitting,
// value branching for small p, and (optionally) sampling for large p.
struct PointSearch {
  std::size_t stop_after_projections = 2;
  bool allow_sampling = true;
  // Projection variables; solutions are compared on these only.
  std::vector<VarId> projection;
};

struct SolutionSet {
  // True when the search was exhaustive (no cap, no sampling).
  bool complete = true;
  // One full witness point per distinct projection found.
  std::vector<Binding> points;
  // Projection variables that were unconstrained in some solution.
  std::vector<VarId> free_projection_vars;
  std::string incomplete_reason;
};

// `vars` lists every variable to solve for (variables absent from the
// constraints are free).
SolutionSet solve_points(const Prime& p, const std::vector<Polynomial>& polys, const std::vector<VarId>& vars,
                         const PointSearch& search, const CheckContext& ctx);

enum class VarietyKind { Empty, UniqueOutputs, MultipleOutputs, Unknown };
const char* to_string(VarietyKind k);

struct VarietyOutputs {
  VarietyKind kind = VarietyKind::Unknown;
  // Full points: two for MultipleOutputs, one for UniqueOutputs when enumerated.
  std::vector<Binding> witnesses;
  std::vector<VarId> free_outputs;
  // Every unknown is triangularly determined (RationalInK analysis).
  bool all_unknowns_determined = false;
  // The answer counts F_p points exactly rather than reasoning in the closure.
  bool over_fp = false;
  std::vector<Polynomial> assumptions;
  std::string detail;
};

VarietyOutputs variety_outputs(const GroebnerBasis& gb, const ConstraintSystem& sys, const CheckContext& ctx);

}  // namespace acheck
