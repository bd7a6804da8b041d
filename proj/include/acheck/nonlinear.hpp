#pragma once

#include <cstddef>
#include <vector>

#include "acheck/circuit.hpp"
#include "acheck/verdict.hpp"

namespace acheck {

// A known-input assignment under which some coefficient of an unknown
// monomial vanishes.
struct CandidateInput {
  Binding binding;
  std::size_t frequency = 0;
};

struct CandidateStats {
  std::size_t origins = 0;   // (constraint, unknown monomial) pairs with a nonconstant coefficient
  std::size_t skipped = 0;   // coefficients of a shape the solver does not handle
  std::size_t dropped = 0;   // candidates beyond the cap
};

// Solutions of c(K) = 0 for every nonconstant K-coefficient c of an unknown
// monomial, tallied by how many (constraint, monomial) pairs produce them.
// Sorted by descending frequency, then by binding.
std::vector<CandidateInput> undetermined_coeff_solutions(const ConstraintSystem& sys, std::size_t cap = 64,
                                                         CandidateStats* stats = nullptr);

// Substitutes the binding and re-runs the full check. True iff the result is
// precisely underconstrained; `found` then receives that verdict with the
// binding merged into its witness inputs.
bool recheck_under_binding(const ConstraintSystem& sys, const CandidateInput& c, CheckContext& ctx,
                           Verdict* found = nullptr);

Verdict check_k_coefficient(const ConstraintSystem& sys, CheckContext& ctx);
Verdict check_higher(const ConstraintSystem& sys, CheckContext& ctx);

}  // namespace acheck
