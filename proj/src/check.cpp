#include "acheck/check.hpp"

#include "acheck/errors.hpp"
#include "acheck/linear.hpp"
#include "acheck/log.hpp"
#include "acheck/nonlinear.hpp"

namespace acheck {

namespace {

Verdict check_empty(const ConstraintSystem& sys) {
  Verdict v;
  auto outputs = sys.outputs();
  if (outputs.empty()) {
    v.category = Category::PreciselyExactConstrained;
    return v;
  }
  v.category = Category::PreciselyUnderconstrained;
  for (long value : {0L, 1L}) {
    Binding b;
    for (VarId o : outputs) b.emplace(o.index, FieldElement(sys.prime(), value));
    v.evidence.output_witnesses.push_back(name_binding(sys, b));
  }
  for (VarId o : outputs) v.evidence.free_outputs.push_back(sys.name(o));
  return v;
}

}  // namespace

Verdict check(const ConstraintSystem& sys, const CheckConfig& cfg) {
  CheckContext ctx(cfg);
  return check(sys, ctx);
}

Verdict check(const ConstraintSystem& sys, CheckContext& ctx) {
  auto start = std::chrono::steady_clock::now();
  Verdict v;
  std::optional<CircuitClass> cls;
  try {
    if (sys.constraints().empty()) {
      v = check_empty(sys);
    } else {
      cls = classify_circuit(sys);
      switch (*cls) {
        case CircuitClass::PreciselyLinear: v = check_linear(sys, ctx); break;
        case CircuitClass::KCoefficient: v = check_k_coefficient(sys, ctx); break;
        case CircuitClass::HigherOrder: v = check_higher(sys, ctx); break;
      }
    }
  } catch (const ResourceExhausted& e) {
    v = Verdict{};
    v.reason = UnknownReason::ResourceCap;
    v.reason_detail = e.what();
  }
  v.circuit_class = cls;
  v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ctx.depth == 0) {
    log::info(std::string("verdict ") + to_string(v.category) + " in " + std::to_string(v.seconds) + " s");
  }
  return v;
}

}  // namespace acheck
