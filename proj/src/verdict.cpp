#include "acheck/verdict.hpp"

#include "acheck/errors.hpp"

namespace acheck {

const char* to_string(Category c) {
  switch (c) {
    case Category::PreciselyUnderconstrained: return "precisely-underconstrained";
    case Category::PreciselyExactConstrained: return "precisely-exact-constrained";
    case Category::PreciselyOverconstrained: return "precisely-overconstrained";
    case Category::AlgebraicExactConstrained: return "algebraic-exact-constrained";
    case Category::AlgebraicOverconstrained: return "algebraic-overconstrained";
    case Category::Unknown: return "unknown";
  }
  return "?";
}

std::optional<Category> category_from_string(const std::string& s) {
  for (Category c : {Category::PreciselyUnderconstrained, Category::PreciselyExactConstrained,
                     Category::PreciselyOverconstrained, Category::AlgebraicExactConstrained,
                     Category::AlgebraicOverconstrained, Category::Unknown}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

bool is_precise(Category c) {
  return c == Category::PreciselyUnderconstrained || c == Category::PreciselyExactConstrained ||
         c == Category::PreciselyOverconstrained;
}

const char* to_string(Truth t) {
  switch (t) {
    case Truth::Under: return "under";
    case Truth::Exact: return "exact";
    case Truth::Over: return "over";
  }
  return "?";
}

bool consistent(Category c, Truth t) {
  switch (c) {
    case Category::PreciselyUnderconstrained: return t == Truth::Under;
    case Category::PreciselyExactConstrained: return t == Truth::Exact;
    case Category::PreciselyOverconstrained: return t == Truth::Over;
    case Category::AlgebraicExactConstrained: return t != Truth::Over;
    case Category::AlgebraicOverconstrained: return t != Truth::Under;
    case Category::Unknown: return true;
  }
  return false;
}

const char* to_string(UnknownReason r) {
  switch (r) {
    case UnknownReason::None: return "none";
    case UnknownReason::ResourceCap: return "resource-cap";
    case UnknownReason::EnumerationBound: return "enumeration-bound";
    case UnknownReason::UnsupportedShape: return "unsupported-shape";
    case UnknownReason::Ambiguous: return "ambiguous";
  }
  return "?";
}

void CheckContext::tick() const {
  if (expired()) throw ResourceExhausted("timeout after " + std::to_string(cfg_.timeout_seconds) + " s");
}

bool CheckContext::claim_recheck() {
  if (rechecks_ >= cfg_.max_rechecks) return false;
  ++rechecks_;
  return true;
}

NamedValues name_binding(const ConstraintSystem& sys, const Binding& b) {
  NamedValues out;
  for (const auto& [idx, v] : b) out.emplace_back(sys.variable(idx).name, v.to_string());
  return out;
}

}  // namespace acheck
