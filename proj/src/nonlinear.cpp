#include "acheck/nonlinear.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "acheck/errors.hpp"
#include "acheck/groebner.hpp"
#include "acheck/linear.hpp"
#include "acheck/log.hpp"
#include "acheck/univariate.hpp"
#include "regions.hpp"

namespace acheck {

std::vector<CandidateInput> undetermined_coeff_solutions(const ConstraintSystem& sys, std::size_t cap,
                                                         CandidateStats* stats) {
  CandidateStats local;
  CandidateStats& st = stats ? *stats : local;
  const Prime& p = sys.prime();
  std::map<Binding, std::size_t> table;
  for (const auto& poly : sys.constraints()) {
    for (const auto& [mono, coeff] : poly.collect_by_unknowns()) {
      if (mono.is_one() || coeff.is_constant()) continue;
      ++st.origins;
      std::set<Binding> sols;
      auto vars = coeff.variables();
      if (vars.size() == 1) {
        for (const auto& r : univariate::roots(*coeff.as_univariate(vars[0].index), p.value())) {
          sols.insert(Binding{{vars[0].index, FieldElement(p, r)}});
        }
      } else if (coeff.total_degree() == 1) {
        // lowest-index variable as pivot, the others at zero
        VarId v = vars.front();
        FieldElement a = coeff.coefficient(Monomial::of(v));
        Binding b;
        for (std::size_t i = 1; i < vars.size(); ++i) b.emplace(vars[i].index, FieldElement(p));
        b.emplace(v.index, -coeff.constant_term() / a);
        sols.insert(b);
      } else {
        ++st.skipped;
        continue;
      }
      for (const auto& b : sols) ++table[b];
    }
  }
  std::vector<CandidateInput> out;
  for (auto& [b, n] : table) out.push_back({b, n});
  std::stable_sort(out.begin(), out.end(),
                   [](const CandidateInput& a, const CandidateInput& b) { return a.frequency > b.frequency; });
  if (out.size() > cap) {
    st.dropped = out.size() - cap;
    log::info("candidate table truncated: " + std::to_string(st.dropped) + " candidates not tried");
    out.resize(cap);
  }
  return out;
}

bool recheck_under_binding(const ConstraintSystem& sys, const CandidateInput& c, CheckContext& ctx, Verdict* found) {
  Verdict v = detail::nested_check(sys.substituted(c.binding), ctx);
  if (v.category != Category::PreciselyUnderconstrained) {
    if (v.category == Category::PreciselyOverconstrained) {
      log::info("candidate " + [&] {
        std::string s;
        for (const auto& [n, val] : name_binding(sys, c.binding)) s += n + "=" + val + " ";
        return s;
      }() + "gives an overconstrained specialization");
    }
    return false;
  }
  if (found) {
    Binding full = c.binding;
    for (const auto& [name, value] : v.evidence.inputs) {
      if (auto var = sys.find(name)) full.insert_or_assign(var->index, FieldElement(sys.prime(), mpz_class(value)));
    }
    v.evidence.inputs = name_binding(sys, full);
    *found = std::move(v);
  }
  return true;
}

namespace {

std::optional<Verdict> try_candidates(const ConstraintSystem& sys, CheckContext& ctx) {
  CandidateStats stats;
  auto candidates = undetermined_coeff_solutions(sys, ctx.config().max_candidates, &stats);
  if (stats.skipped) log::debug(std::to_string(stats.skipped) + " coefficients skipped by the candidate solver");
  for (const auto& c : candidates) {
    Verdict v;
    if (recheck_under_binding(sys, c, ctx, &v)) return v;
  }
  return std::nullopt;
}

void add_unique(std::vector<Polynomial>& list, const Polynomial& p) {
  if (p.is_constant()) return;
  Polynomial m = p.monic();
  if (std::find(list.begin(), list.end(), m) == list.end()) list.push_back(m);
}

NamedValues project_outputs(const ConstraintSystem& sys, const Binding& point) {
  Binding outs;
  for (VarId o : sys.outputs()) {
    auto it = point.find(o.index);
    outs.emplace(o.index, it == point.end() ? FieldElement(sys.prime()) : it->second);
  }
  return name_binding(sys, outs);
}

std::vector<std::string> structurally_free_outputs(const ConstraintSystem& sys) {
  std::vector<std::string> out;
  for (VarId o : sys.outputs()) {
    bool used = std::any_of(sys.constraints().begin(), sys.constraints().end(),
                            [&](const Polynomial& p) { return p.contains(o.index); });
    if (!used) out.push_back(sys.name(o));
  }
  return out;
}

Verdict check_constant_higher(const ConstraintSystem& sys, CheckContext& ctx) {
  const auto& cfg = ctx.config();
  GbLimits limits{.max_basis = cfg.max_basis_size, .max_pairs = cfg.max_pairs, .ctx = &ctx};
  GroebnerBasis gb = buchberger(sys.constraints(), MonomialOrder::grevlex(), CoefficientDomain::ConstantField, limits);
  Verdict v;
  if (gb.is_unit()) {
    v.category = Category::PreciselyOverconstrained;
    v.evidence.notes.push_back("1 lies in the ideal");
    return v;
  }
  VarietyOutputs vo = variety_outputs(gb, sys, ctx);
  switch (vo.kind) {
    case VarietyKind::Empty:
      v.category = Category::PreciselyOverconstrained;
      v.evidence.notes.push_back("no point over the prime field");
      break;
    case VarietyKind::MultipleOutputs:
      v.category = Category::PreciselyUnderconstrained;
      v.evidence.free_outputs = structurally_free_outputs(sys);
      for (VarId o : vo.free_outputs) {
        const std::string& n = sys.name(o);
        if (std::find(v.evidence.free_outputs.begin(), v.evidence.free_outputs.end(), n) == v.evidence.free_outputs.end()) {
          v.evidence.free_outputs.push_back(n);
        }
      }
      for (std::size_t i = 0; i < 2 && i < vo.witnesses.size(); ++i) {
        v.evidence.output_witnesses.push_back(project_outputs(sys, vo.witnesses[i]));
      }
      break;
    case VarietyKind::UniqueOutputs:
      v.category = Category::PreciselyExactConstrained;
      break;
    case VarietyKind::Unknown:
      v.category = Category::Unknown;
      v.reason = UnknownReason::EnumerationBound;
      v.reason_detail = vo.detail;
      break;
  }
  return v;
}

}  // namespace

Verdict check_k_coefficient(const ConstraintSystem& sys, CheckContext& ctx) {
  if (auto v = try_candidates(sys, ctx)) return *v;

  LinearSolution sol = gauss_jordan(to_matrix(sys), &ctx);
  std::vector<Polynomial> ledger = sol.ledger;
  detail::RegionAnalysis ra(sys, ctx);
  for (const auto& l : sol.ledger) ra.add_zero_set(l);

  if (!sol.inconsistent.empty()) {
    std::optional<Polynomial> c;
    bool constant = false;
    for (const auto& r : sol.inconsistent) {
      if (r.numerator().is_constant()) constant = true;
      if (!c && !r.numerator().is_constant()) c = r.numerator().monic();
    }
    std::vector<Polynomial> nonzero = ledger;
    if (!constant && c) {
      ra.add_zero_set(*c);
      nonzero.push_back(*c);
      add_unique(ledger, *c);
    }
    ra.add_generic({Truth::Over}, nonzero);
  } else if (check_uniqueness(sol, sys.outputs())) {
    ra.add_generic({Truth::Exact}, ledger);
  } else {
    ra.add_generic({Truth::Under}, ledger);
  }
  return ra.finish(false, ledger);
}

// Fallback when the parametric basis cannot be computed: every point of a
// small K-space is checked on its own, which makes the answer exact.
static Verdict enumerate_known_space(const ConstraintSystem& sys, CheckContext& ctx, const std::string& why) {
  const Prime& p = sys.prime();
  auto ks = detail::known_support(sys);
  std::uint64_t space = 1;
  bool small = p.is_small();
  for (std::size_t i = 0; small && i < ks.size(); ++i) {
    if (space > ctx.config().zero_set_point_bound / p.small_value()) small = false;
    space *= p.small_value();
  }
  if (!small || space > ctx.config().zero_set_point_bound) throw ResourceExhausted(why);
  log::debug(std::string(why) + "; enumerating " + std::to_string(space) + " known-input points");
  detail::RegionAnalysis ra(sys, ctx);
  for (std::uint64_t code = 0; code < space && !ra.under_found(); ++code) {
    ctx.tick();
    Binding b;
    std::uint64_t c = code;
    for (VarId v : ks) {
      b.emplace(v.index, FieldElement(p, static_cast<long>(c % p.small_value())));
      c /= p.small_value();
    }
    ra.add_point(b);
  }
  ra.note(std::string(why) + "; every known-input point checked");
  return ra.finish(true, {});
}

Verdict check_higher(const ConstraintSystem& sys, CheckContext& ctx) {
  if (detail::known_support(sys).empty()) return check_constant_higher(sys, ctx);
  if (auto v = try_candidates(sys, ctx)) return *v;

  const auto& cfg = ctx.config();
  GbLimits limits{.max_basis = cfg.max_basis_size,
                  .max_pairs = cfg.max_pairs,
                  .max_coefficient_terms = cfg.max_coefficient_terms,
                  .ctx = &ctx};
  GroebnerBasis gb;
  try {
    gb = buchberger(sys.constraints(), MonomialOrder::grevlex(), CoefficientDomain::RationalInK, limits);
  } catch (const ResourceExhausted& e) {
    if (ctx.expired()) throw;
    return enumerate_known_space(sys, ctx, e.what());
  }
  std::vector<Polynomial> nonzero = gb.ledger;
  detail::RegionAnalysis ra(sys, ctx);

  std::set<Truth> generic;
  if (gb.is_unit()) {
    generic = {Truth::Over};
  } else {
    VarietyOutputs vo = variety_outputs(gb, sys, ctx);
    for (const auto& a : vo.assumptions) add_unique(nonzero, a);
    bool exists = vo.all_unknowns_determined;
    if (!vo.free_outputs.empty()) {
      generic = exists ? std::set<Truth>{Truth::Under} : std::set<Truth>{Truth::Under, Truth::Over};
    } else if (vo.kind == VarietyKind::UniqueOutputs) {
      generic = exists ? std::set<Truth>{Truth::Exact} : std::set<Truth>{Truth::Exact, Truth::Over};
    } else {
      generic = {Truth::Under, Truth::Exact, Truth::Over};
    }
  }
  for (const auto& l : nonzero) ra.add_zero_set(l);
  ra.add_generic(generic, nonzero);
  return ra.finish(false, nonzero);
}

}  // namespace acheck
