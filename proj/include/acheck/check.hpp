#pragma once

#include "acheck/circuit.hpp"
#include "acheck/verdict.hpp"

namespace acheck {

// Classifies the system and dispatches to the linear, K-coefficient or
// higher-order checker. Never throws for resource problems: those become
// Unknown with a reason.
Verdict check(const ConstraintSystem& sys, const CheckConfig& cfg = {});

// Nested form sharing a deadline and recheck budget.
Verdict check(const ConstraintSystem& sys, CheckContext& ctx);

}  // namespace acheck
