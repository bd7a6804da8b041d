#include "regions.hpp"

#include <algorithm>
#include <random>

#include "acheck/check.hpp"
#include "acheck/log.hpp"
#include "acheck/univariate.hpp"

namespace acheck::detail {

Outlook outlook_of(const Verdict& v, bool no_known) {
  using enum Truth;
  switch (v.category) {
    case Category::PreciselyUnderconstrained:
      return no_known ? Outlook{{Under}, {Under}} : Outlook{{Under, Exact, Over}, {Under}};
    case Category::PreciselyExactConstrained: return {{Exact}, {Exact}};
    case Category::PreciselyOverconstrained:
      return no_known ? Outlook{{Over}, {Over}} : Outlook{{Exact, Over}, {Over}};
    case Category::AlgebraicExactConstrained: return {{Under, Exact}, {}};
    case Category::AlgebraicOverconstrained: return {{Exact, Over}, {}};
    case Category::Unknown: return {{Under, Exact, Over}, {}};
  }
  return {{Under, Exact, Over}, {}};
}

Verdict nested_check(const ConstraintSystem& sys, CheckContext& ctx) {
  if (!ctx.claim_recheck()) {
    Verdict v;
    v.reason = UnknownReason::ResourceCap;
    v.reason_detail = "recheck budget exhausted";
    return v;
  }
  ++ctx.depth;
  Verdict v = check(sys, ctx);
  --ctx.depth;
  return v;
}

std::vector<VarId> known_support(const ConstraintSystem& sys, const std::vector<Polynomial>& extra) {
  std::set<VarId> vars;
  auto scan = [&](const Polynomial& p) {
    for (VarId v : p.variables()) {
      if (v.kind == VarKind::Known) vars.insert(v);
    }
  };
  for (const auto& c : sys.constraints()) scan(c);
  for (const auto& c : extra) scan(c);
  return {vars.begin(), vars.end()};
}

std::vector<Binding> RegionAnalysis::sample_points(const std::vector<Polynomial>& nonzero, std::size_t limit) const {
  const Prime& p = sys_.prime();
  auto vars = known_support(sys_, nonzero);
  std::vector<Binding> out;
  auto accept = [&](const Binding& b) {
    for (const auto& q : nonzero) {
      if (q.substitute(b).is_zero()) return;
    }
    out.push_back(b);
  };

  std::uint64_t space = 1;
  bool small = p.is_small();
  for (std::size_t i = 0; small && i < vars.size(); ++i) {
    if (space > (std::uint64_t(1) << 20) / p.small_value()) small = false;
    space *= p.small_value();
  }
  std::size_t tries = std::max<std::size_t>(limit, ctx_.config().sample_tries);
  if (small && space <= tries) {
    for (std::uint64_t code = 0; code < space && out.size() < limit; ++code) {
      Binding b;
      std::uint64_t c = code;
      for (VarId v : vars) {
        b.emplace(v.index, FieldElement(p, static_cast<long>(c % p.small_value())));
        c /= p.small_value();
      }
      accept(b);
    }
    return out;
  }
  std::mt19937_64 rng(0x5eed + vars.size());
  for (std::size_t t = 0; t < tries && out.size() < limit; ++t) {
    ctx_.tick();
    Binding b;
    for (VarId v : vars) {
      mpz_class value;
      if (t < 2) {
        value = static_cast<long>(t);
      } else {
        mpz_set_ui(value.get_mpz_t(), rng());
        value = (value << 64) + mpz_class(std::to_string(rng()));
      }
      b.emplace(v.index, FieldElement(p, value));
    }
    accept(b);
  }
  return out;
}

void RegionAnalysis::add_generic(std::set<Truth> possible, const std::vector<Polynomial>& nonzero) {
  bool under = possible.count(Truth::Under) > 0;
  std::size_t want = under && !under_ ? ctx_.config().sample_tries : 1;
  auto points = sample_points(nonzero, want);
  Outlook o{possible, {}};
  if (!points.empty() && possible.size() == 1) o.certain = possible;
  regions_.push_back(o);
  if (!under) return;
  for (const auto& b : points) {
    if (under_ || b.empty()) break;
    add_point(b);
  }
}

Verdict RegionAnalysis::add_point(const Binding& binding) {
  ConstraintSystem sub = sys_.substituted(binding);
  Verdict v = nested_check(sub, ctx_);
  regions_.push_back(outlook_of(v, known_support(sub).empty()));
  if (v.category == Category::PreciselyUnderconstrained && !under_) accept_under(v, binding, std::nullopt);
  return v;
}

void RegionAnalysis::add_subsystem(const ConstraintSystem& sub, const Binding& fixed,
                                   const std::optional<std::pair<VarId, Polynomial>>& solved) {
  Verdict v = nested_check(sub, ctx_);
  regions_.push_back(outlook_of(v, known_support(sub).empty()));
  if (v.category == Category::PreciselyUnderconstrained && !under_) accept_under(v, fixed, solved);
}

void RegionAnalysis::add_zero_set(const Polynomial& L) {
  const Prime& p = sys_.prime();
  if (L.is_constant()) return;  // nonzero constant: empty zero set
  auto vars = L.variables();
  if (vars.size() == 1) {
    for (const auto& r : univariate::roots(*L.as_univariate(vars[0].index), p.value())) {
      Binding b{{vars[0].index, FieldElement(p, r)}};
      add_subsystem(sys_.substituted(b), b, std::nullopt);
    }
    return;
  }
  if (L.total_degree() == 1) {
    VarId v = vars.front();
    FieldElement a = L.coefficient(Monomial::of(v));
    Polynomial rest = L - Polynomial::variable(p, v).scaled(a);
    Polynomial expr = rest.scaled(-a.inv());
    add_subsystem(sys_.substituted(std::map<std::uint32_t, Polynomial>{{v.index, expr}}), Binding{},
                  std::make_pair(v, expr));
    return;
  }
  std::uint64_t space = 1;
  bool small = p.is_small();
  for (std::size_t i = 0; small && i < vars.size(); ++i) {
    if (space > ctx_.config().zero_set_point_bound / p.small_value()) small = false;
    space *= p.small_value();
  }
  if (small && space <= ctx_.config().zero_set_point_bound) {
    for (std::uint64_t code = 0; code < space; ++code) {
      ctx_.tick();
      Binding b;
      std::uint64_t c = code;
      for (VarId v : vars) {
        b.emplace(v.index, FieldElement(p, static_cast<long>(c % p.small_value())));
        c /= p.small_value();
      }
      if (!L.evaluate(b).is_zero()) continue;
      add_subsystem(sys_.substituted(b), b, std::nullopt);
    }
    return;
  }
  relaxed_ = true;
  note("zero set of " + L.to_string(sys_.namer()) + " not examined");
}

void RegionAnalysis::accept_under(const Verdict& sub, const Binding& fixed,
                                  const std::optional<std::pair<VarId, Polynomial>>& solved) {
  const Prime& p = sys_.prime();
  Binding full = fixed;
  for (const auto& [name, value] : sub.evidence.inputs) {
    if (auto v = sys_.find(name)) full.insert_or_assign(v->index, FieldElement(p, mpz_class(value)));
  }
  if (solved) {
    Binding at = full;
    for (VarId v : solved->second.variables()) at.emplace(v.index, FieldElement(p));
    full.insert_or_assign(solved->first.index, solved->second.evaluate(at));
  }
  Verdict v = sub;
  v.evidence.inputs = name_binding(sys_, full);
  under_ = std::move(v);
}

Verdict RegionAnalysis::finish(bool precise_grade, const std::vector<Polynomial>& ledger) {
  using enum Truth;
  Verdict v;
  for (const auto& l : ledger) v.ledger.push_back(l.to_string(sys_.namer()));
  if (under_) {
    v.category = Category::PreciselyUnderconstrained;
    v.evidence = under_->evidence;
    for (auto& n : notes_) v.evidence.notes.push_back(n);
    return v;
  }
  v.evidence.notes = notes_;
  std::set<Truth> possible, certain;
  for (const auto& r : regions_) {
    possible.insert(r.possible.begin(), r.possible.end());
    certain.insert(r.certain.begin(), r.certain.end());
  }
  bool can_under = possible.count(Under) > 0;
  bool can_over = possible.count(Over) > 0 && !certain.count(Under);
  bool can_exact = possible.count(Exact) > 0 && !certain.count(Under) && !certain.count(Over);
  if (certain.count(Under)) {
    // a region is certainly underconstrained but no witness was assembled
    v.category = Category::AlgebraicExactConstrained;
    return v;
  }
  if (can_exact && !can_under && !can_over) {
    v.category = precise_grade ? Category::PreciselyExactConstrained : Category::AlgebraicExactConstrained;
  } else if (can_over && !can_under && !can_exact) {
    v.category = precise_grade ? Category::PreciselyOverconstrained : Category::AlgebraicOverconstrained;
  } else if (!can_over && (can_under || can_exact)) {
    v.category = Category::AlgebraicExactConstrained;
  } else if (!can_under && (can_exact || can_over)) {
    v.category = Category::AlgebraicOverconstrained;
  } else {
    v.category = Category::Unknown;
    v.reason = UnknownReason::Ambiguous;
    std::string labels;
    for (Truth t : possible) labels += std::string(labels.empty() ? "" : ",") + to_string(t);
    v.reason_detail = "possible labels: " + labels;
  }
  return v;
}

}  // namespace acheck::detail
