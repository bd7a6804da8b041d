#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "acheck/circuit.hpp"
#include "acheck/verdict.hpp"

namespace acheck {

struct OracleResult {
  Truth aggregate = Truth::Exact;
  // One label per assignment of the known inputs occurring in the constraints.
  std::vector<std::pair<Binding, Truth>> per_input;
  std::uint64_t points = 0;
};

// Exhaustive enumeration over every assignment of the known inputs and
// unknowns occurring in the constraints. Outputs that occur nowhere count as
// free. Per input: no solution is Over, two or more output projections is
// Under, otherwise Exact. Aggregate: Under if any, else Over if any, else
// Exact. Returns nullopt when p^(variables) exceeds `max_points` or p does
// not fit in 32 bits.
std::optional<OracleResult> oracle(const ConstraintSystem& sys, std::uint64_t max_points);

}  // namespace acheck
