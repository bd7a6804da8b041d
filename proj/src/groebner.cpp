#include "acheck/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "acheck/errors.hpp"
#include "acheck/rational.hpp"

namespace acheck {

namespace {

struct FieldDomain {
  using C = FieldElement;
  Prime prime;

  C zero() const { return C(prime); }
  C one() const { return C(prime, 1); }
  static bool is_zero(const C& c) { return c.is_zero(); }
  static bool is_one(const C& c) { return c.is_one(); }
  C inv(const C& c) const { return c.inv(); }
  void guard(const C&) const {}
};

struct RationalDomain {
  using C = RationalFunction;
  Prime prime;
  std::vector<Polynomial>* ledger;
  std::size_t max_terms;

  // Multivariate fractions are only partly cancelled, so their size is capped.
  void guard(const C& c) const {
    if (c.numerator().size() + c.denominator().size() > max_terms) {
      throw ResourceExhausted("groebner: coefficient growth in F_p(K)");
    }
  }

  C zero() const { return C(prime); }
  C one() const { return C::constant(FieldElement(prime, 1)); }
  static bool is_zero(const C& c) { return c.is_zero(); }
  static bool is_one(const C& c) { return c.is_one(); }
  C inv(const C& c) const {
    if (!c.is_constant()) {
      Polynomial n = c.numerator().monic();
      if (!n.is_constant() && std::find(ledger->begin(), ledger->end(), n) == ledger->end()) ledger->push_back(n);
    }
    return c.inv();
  }
};

template <class C>
struct GTerm {
  Monomial m;
  C c;
};

// Terms in ascending order; the leading term is back().
template <class C>
using GPoly = std::vector<GTerm<C>>;

template <class Dom>
class Engine {
 public:
  using C = typename Dom::C;
  using Poly = GPoly<C>;

  Engine(Dom dom, const MonomialOrder& order, const GbLimits& limits) : dom_(std::move(dom)), order_(order), limits_(limits) {}

  void sort(Poly& f) const {
    std::sort(f.begin(), f.end(), [&](const GTerm<C>& a, const GTerm<C>& b) { return order_.less(a.m, b.m); });
  }

  // f - c * mono * g
  Poly sub_scaled(const Poly& f, const C& c, const Monomial& mono, const Poly& g) const {
    Poly out;
    out.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    while (i < f.size() || j < g.size()) {
      if (j == g.size()) {
        out.push_back(f[i++]);
        continue;
      }
      Monomial gm = g[j].m * mono;
      if (i == f.size()) {
        out.push_back({gm, dom_.zero() - c * g[j].c});
        dom_.guard(out.back().c);
        ++j;
        continue;
      }
      auto cmp = order_.compare(f[i].m, gm);
      if (cmp < 0) {
        out.push_back(f[i++]);
      } else if (cmp > 0) {
        out.push_back({gm, dom_.zero() - c * g[j].c});
        dom_.guard(out.back().c);
        ++j;
      } else {
        C v = f[i].c - c * g[j].c;
        dom_.guard(v);
        if (!Dom::is_zero(v)) out.push_back({f[i].m, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  Poly make_monic(const Poly& f) const {
    if (f.empty() || Dom::is_one(f.back().c)) return f;
    C inv = dom_.inv(f.back().c);
    Poly out = f;
    for (auto& t : out) t.c = t.c * inv;
    return out;
  }

  // Full reduction against monic divisors; `skip` excludes one index.
  Poly normal_form(Poly f, const std::vector<Poly>& divisors, std::size_t skip = SIZE_MAX) const {
    Poly rem;
    while (!f.empty()) {
      if (limits_.ctx) limits_.ctx->tick();
      const GTerm<C> lt = f.back();
      bool reduced = false;
      for (std::size_t k = 0; k < divisors.size(); ++k) {
        if (k == skip || divisors[k].empty()) continue;
        const auto& g = divisors[k];
        if (g.back().m.divides(lt.m)) {
          f = sub_scaled(f, lt.c, lt.m.quotient(g.back().m), g);
          reduced = true;
          break;
        }
      }
      if (!reduced) {
        rem.push_back(lt);
        f.pop_back();
      }
    }
    std::reverse(rem.begin(), rem.end());
    return rem;
  }

  Poly s_poly(const Poly& f, const Poly& g) const {
    Monomial l = f.back().m.lcm(g.back().m);
    Poly a = sub_scaled(Poly{}, dom_.zero() - dom_.one(), l.quotient(f.back().m), f);  // (l/lm f) * f
    return sub_scaled(a, dom_.one(), l.quotient(g.back().m), g);
  }

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint32_t degree;
  };

  std::vector<Poly> run(std::vector<Poly> inputs, std::uint64_t& considered, std::uint64_t& pruned) {
    basis_.clear();
    pairs_.clear();
    pending_.clear();
    for (auto& f : inputs) {
      Poly r = normal_form(std::move(f), basis_);
      if (r.empty()) continue;
      if (add(make_monic(r))) return {unit()};
    }
    while (!pairs_.empty()) {
      if (limits_.ctx) limits_.ctx->tick();
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        auto c = order_.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
      });
      Pair pr = *best;
      pairs_.erase(best);
      pending_.erase({pr.i, pr.j});
      ++considered;
      if (considered > limits_.max_pairs) throw ResourceExhausted("groebner: pair limit exceeded");
      const Monomial& li = basis_[pr.i].back().m;
      const Monomial& lj = basis_[pr.j].back().m;
      if (li.coprime(lj)) {
        ++pruned;
        continue;
      }
      if (chain_criterion(pr)) {
        ++pruned;
        continue;
      }
      Poly r = normal_form(s_poly(basis_[pr.i], basis_[pr.j]), basis_);
      if (r.empty()) continue;
      if (add(make_monic(r))) return {unit()};
      if (basis_.size() > limits_.max_basis) throw ResourceExhausted("groebner: basis size limit exceeded");
    }
    return reduce_basis();
  }

 private:
  Poly unit() const { return Poly{{Monomial(), dom_.one()}}; }

  // Returns true for the unit ideal.
  bool add(Poly h) {
    if (h.back().m.is_one()) return true;
    std::size_t t = basis_.size();
    basis_.push_back(std::move(h));
    for (std::size_t i = 0; i < t; ++i) {
      Monomial l = basis_[i].back().m.lcm(basis_[t].back().m);
      pairs_.push_back({i, t, l, l.total_degree()});
      pending_.insert({i, t});
    }
    return false;
  }

  bool chain_criterion(const Pair& pr) const {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!basis_[k].back().m.divides(pr.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (!pending_.count(key(pr.i, k)) && !pending_.count(key(pr.j, k))) return true;
    }
    return false;
  }

  std::vector<Poly> reduce_basis() const {
    std::vector<Poly> minimal;
    for (std::size_t a = 0; a < basis_.size(); ++a) {
      bool redundant = false;
      for (std::size_t b = 0; b < basis_.size() && !redundant; ++b) {
        if (a == b) continue;
        const Monomial& la = basis_[a].back().m;
        const Monomial& lb = basis_[b].back().m;
        if (lb.divides(la) && (!(la == lb) || b < a)) redundant = true;
      }
      if (!redundant) minimal.push_back(basis_[a]);
    }
    std::vector<Poly> reduced;
    for (std::size_t a = 0; a < minimal.size(); ++a) reduced.push_back(make_monic(normal_form(minimal[a], minimal, a)));
    std::sort(reduced.begin(), reduced.end(),
              [&](const Poly& x, const Poly& y) { return order_.less(y.back().m, x.back().m); });
    return reduced;
  }

  Dom dom_;
  const MonomialOrder& order_;
  GbLimits limits_;
  std::vector<Poly> basis_;
  std::vector<Pair> pairs_;
  std::set<std::pair<std::size_t, std::size_t>> pending_;
};

GPoly<FieldElement> to_field_poly(const Polynomial& p, const Engine<FieldDomain>& e) {
  GPoly<FieldElement> out;
  for (const auto& [m, c] : p.terms()) out.push_back({m, c});
  e.sort(out);
  return out;
}

Polynomial from_field_poly(const Prime& prime, const GPoly<FieldElement>& f) {
  Polynomial p(prime);
  for (const auto& t : f) p.add_term(t.m, t.c);
  return p;
}

GPoly<RationalFunction> to_rational_poly(const Polynomial& p, const Engine<RationalDomain>& e) {
  GPoly<RationalFunction> out;
  for (auto& [m, coeff] : p.collect_by_unknowns()) out.push_back({m, RationalFunction(coeff)});
  e.sort(out);
  return out;
}

Polynomial from_rational_poly(const Prime& prime, const GPoly<RationalFunction>& f) {
  Polynomial common = Polynomial::constant(prime, 1);
  for (const auto& t : f) {
    if (!t.c.denominator().is_constant() && !common.divide_exact(t.c.denominator())) common = common * t.c.denominator();
  }
  Polynomial p(prime);
  for (const auto& t : f) {
    Polynomial scale = *common.divide_exact(t.c.denominator());
    p += (t.c.numerator() * scale).times_monomial(t.m, FieldElement(prime, 1));
  }
  return p;
}

}  // namespace

bool GroebnerBasis::is_unit() const {
  return generators.size() == 1 && generators[0].is_constant() && !generators[0].is_zero();
}

GroebnerBasis buchberger(const std::vector<Polynomial>& polys, const MonomialOrder& order, CoefficientDomain domain,
                         const GbLimits& limits) {
  if (polys.empty()) throw UsageError("buchberger: empty input");
  const Prime& prime = polys.front().prime();
  GroebnerBasis gb;
  gb.order = order;
  gb.domain = domain;
  if (domain == CoefficientDomain::ConstantField) {
    Engine<FieldDomain> e(FieldDomain{prime}, gb.order, limits);
    std::vector<GPoly<FieldElement>> in;
    for (const auto& p : polys) in.push_back(to_field_poly(p, e));
    for (const auto& g : e.run(std::move(in), gb.pairs_considered, gb.pairs_pruned)) {
      gb.generators.push_back(from_field_poly(prime, g));
    }
  } else {
    Engine<RationalDomain> e(RationalDomain{prime, &gb.ledger, limits.max_coefficient_terms}, gb.order, limits);
    std::vector<GPoly<RationalFunction>> in;
    for (const auto& p : polys) in.push_back(to_rational_poly(p, e));
    for (const auto& g : e.run(std::move(in), gb.pairs_considered, gb.pairs_pruned)) {
      gb.generators.push_back(from_rational_poly(prime, g));
    }
  }
  return gb;
}

Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& divisors, const MonomialOrder& order) {
  const Prime& prime = f.prime();
  Engine<FieldDomain> e(FieldDomain{prime}, order, GbLimits{});
  std::vector<GPoly<FieldElement>> ds;
  for (const auto& d : divisors) {
    if (d.is_zero()) continue;
    ds.push_back(e.make_monic(to_field_poly(d, e)));
  }
  return from_field_poly(prime, e.normal_form(to_field_poly(f, e), ds));
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  const Prime& prime = f.prime();
  Engine<FieldDomain> e(FieldDomain{prime}, order, GbLimits{});
  auto a = e.make_monic(to_field_poly(f, e));
  auto b = e.make_monic(to_field_poly(g, e));
  if (a.empty() || b.empty()) return Polynomial(prime);
  return from_field_poly(prime, e.s_poly(a, b));
}

Determinacy triangular_determinacy(const std::vector<Polynomial>& generators) {
  Determinacy out;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& g : generators) {
      for (VarId u : g.variables()) {
        if (!is_unknown(u.kind) || out.determined.count(u.index)) continue;
        Polynomial coeff(g.prime());
        bool linear = true;
        bool rest_ok = true;
        for (const auto& [m, c] : g.terms()) {
          std::uint32_t e = m.exponent(u.index);
          if (e > 1) {
            linear = false;
            break;
          }
          if (e == 1) {
            Monomial rest = m.without(u.index);
            if (rest.degree_in(kUnknownKinds) > 0) {
              linear = false;
              break;
            }
            coeff.add_term(rest, c);
          } else {
            for (const auto& [v, ve] : m.factors()) {
              if (is_unknown(v.kind) && !out.determined.count(v.index)) rest_ok = false;
            }
          }
        }
        if (!linear || !rest_ok || coeff.is_zero()) continue;
        if (!coeff.is_constant()) {
          Polynomial a = coeff.monic();
          if (std::find(out.assumptions.begin(), out.assumptions.end(), a) == out.assumptions.end()) {
            out.assumptions.push_back(a);
          }
        }
        out.determined.insert(u.index);
        changed = true;
      }
    }
  }
  return out;
}

// ------------------------------------------------------------ point search

namespace {

class PointSolver {
 public:
  PointSolver(const Prime& p, const std::vector<VarId>& vars, const PointSearch& search, const CheckContext& ctx)
      : prime_(p), vars_(vars), search_(search), ctx_(ctx) {}

  SolutionSet run(const std::vector<Polynomial>& polys) {
    std::vector<Polynomial> nonzero;
    for (const auto& p : polys) {
      if (!p.is_zero()) nonzero.push_back(p);
    }
    recurse(nonzero, Binding{});
    return std::move(result_);
  }

 private:
  bool done() const { return result_.points.size() >= search_.stop_after_projections; }

  void mark_incomplete(const std::string& why) {
    if (result_.complete) result_.incomplete_reason = why;
    result_.complete = false;
  }

  std::vector<std::string> projection_key(const Binding& point) const {
    std::vector<std::string> key;
    for (VarId v : search_.projection) key.push_back(point.at(v.index).to_string());
    return key;
  }

  void record(const Binding& point) {
    auto key = projection_key(point);
    if (seen_.insert(key).second) result_.points.push_back(point);
  }

  void solution(const Binding& assigned) {
    Binding point = assigned;
    std::vector<VarId> free;
    for (VarId v : vars_) {
      if (!point.count(v.index)) {
        point.emplace(v.index, FieldElement(prime_));
        free.push_back(v);
      }
    }
    record(point);
    for (VarId v : free) {
      bool projected = std::find(search_.projection.begin(), search_.projection.end(), v) != search_.projection.end();
      if (!projected) continue;
      if (std::find(result_.free_projection_vars.begin(), result_.free_projection_vars.end(), v) ==
          result_.free_projection_vars.end()) {
        result_.free_projection_vars.push_back(v);
      }
      Binding other = point;
      other.insert_or_assign(v.index, FieldElement(prime_, 1));
      record(other);
    }
  }

  void branch(const std::vector<Polynomial>& polys, const Binding& assigned, VarId v, const FieldElement& value) {
    Binding one{{v.index, value}};
    std::vector<Polynomial> next;
    for (const auto& p : polys) {
      Polynomial q = p.substitute(one);
      if (q.is_zero()) continue;
      if (q.is_constant()) return;  // contradiction
      next.push_back(std::move(q));
    }
    Binding a = assigned;
    a.emplace(v.index, value);
    recurse(next, a);
  }

  void recurse(const std::vector<Polynomial>& polys, const Binding& assigned) {
    if (done()) return;
    ctx_.tick();
    if (++branches_ > ctx_.config().enumeration_branch_cap) {
      mark_incomplete("branch cap reached");
      return;
    }
    if (polys.empty()) {
      solution(assigned);
      return;
    }
    GbLimits limits{.max_basis = ctx_.config().max_basis_size, .max_pairs = ctx_.config().max_pairs, .ctx = &ctx_};
    GroebnerBasis gb = buchberger(polys, MonomialOrder::grevlex(), CoefficientDomain::ConstantField, limits);
    if (gb.is_unit()) return;
    const auto& gens = gb.generators;

    // univariate generator: split on its roots
    for (const auto& g : gens) {
      auto vs = g.variables();
      if (vs.size() != 1) continue;
      auto roots = univariate::roots(*g.as_univariate(vs[0].index), prime_.value());
      for (const auto& r : roots) {
        branch(gens, assigned, vs[0], FieldElement(prime_, r));
        if (done()) return;
      }
      return;
    }

    std::vector<VarId> present;
    for (const auto& g : gens) {
      for (VarId v : g.variables()) {
        if (std::find(present.begin(), present.end(), v) == present.end()) present.push_back(v);
      }
    }
    std::sort(present.begin(), present.end());

    const auto& cfg = ctx_.config();
    std::size_t unassigned = vars_.size() - assigned.size();
    if (prime_.is_small() && prime_.small_value() <= cfg.enumeration_prime_bound &&
        unassigned <= cfg.enumeration_unknown_bound) {
      VarId v = present.front();
      for (std::uint64_t a = 0; a < prime_.small_value(); ++a) {
        branch(gens, assigned, v, FieldElement(prime_, static_cast<long>(a)));
        if (done() || branches_ > cfg.enumeration_branch_cap) return;
      }
      return;
    }

    // lex basis of a zero-dimensional ideal has a univariate element
    GroebnerBasis lex = buchberger(gens, MonomialOrder::lex(), CoefficientDomain::ConstantField, limits);
    if (lex.is_unit()) return;
    for (auto it = lex.generators.rbegin(); it != lex.generators.rend(); ++it) {
      auto vs = it->variables();
      if (vs.size() != 1) continue;
      for (const auto& r : univariate::roots(*it->as_univariate(vs[0].index), prime_.value())) {
        branch(lex.generators, assigned, vs[0], FieldElement(prime_, r));
        if (done()) return;
      }
      return;
    }
    mark_incomplete("positive-dimensional system over a large field");
    if (!search_.allow_sampling) return;
    VarId v = present.back();
    for (long a = 0; a < 8; ++a) {
      branch(lex.generators, assigned, v, FieldElement(prime_, a));
      if (done()) return;
    }
  }

  Prime prime_;
  std::vector<VarId> vars_;
  PointSearch search_;
  const CheckContext& ctx_;
  SolutionSet result_;
  std::set<std::vector<std::string>> seen_;
  std::uint64_t branches_ = 0;
};

}  // namespace

SolutionSet solve_points(const Prime& p, const std::vector<Polynomial>& polys, const std::vector<VarId>& vars,
                         const PointSearch& search, const CheckContext& ctx) {
  for (const auto& poly : polys) {
    if (poly.is_constant() && !poly.is_zero()) return SolutionSet{};
  }
  return PointSolver(p, vars, search, ctx).run(polys);
}

const char* to_string(VarietyKind k) {
  switch (k) {
    case VarietyKind::Empty: return "empty";
    case VarietyKind::UniqueOutputs: return "unique-outputs";
    case VarietyKind::MultipleOutputs: return "multiple-outputs";
    case VarietyKind::Unknown: return "unknown";
  }
  return "?";
}

VarietyOutputs variety_outputs(const GroebnerBasis& gb, const ConstraintSystem& sys, const CheckContext& ctx) {
  VarietyOutputs out;
  if (gb.is_unit()) {
    out.kind = VarietyKind::Empty;
    out.over_fp = gb.domain == CoefficientDomain::ConstantField;
    return out;
  }
  auto outputs = sys.outputs();
  Determinacy det = triangular_determinacy(gb.generators);
  std::vector<VarId> appearing;
  for (const auto& g : gb.generators) {
    for (VarId v : g.variables()) {
      if (is_unknown(v.kind) && std::find(appearing.begin(), appearing.end(), v) == appearing.end()) appearing.push_back(v);
    }
  }
  out.all_unknowns_determined = std::all_of(appearing.begin(), appearing.end(),
                                            [&](VarId v) { return det.determined.count(v.index) > 0; });
  for (VarId o : outputs) {
    if (std::find(appearing.begin(), appearing.end(), o) == appearing.end()) out.free_outputs.push_back(o);
  }
  bool outputs_determined = std::all_of(outputs.begin(), outputs.end(),
                                        [&](VarId o) { return det.determined.count(o.index) > 0; });

  if (gb.domain == CoefficientDomain::RationalInK) {
    out.assumptions = det.assumptions;
    if (outputs_determined) {
      out.kind = VarietyKind::UniqueOutputs;
      out.detail = "outputs triangularly determined over F_p(K)";
    } else {
      out.kind = VarietyKind::Unknown;
      out.detail = "outputs not determined over F_p(K)";
    }
    return out;
  }

  PointSearch search;
  search.stop_after_projections = 2;
  search.allow_sampling = true;
  search.projection = outputs;
  SolutionSet sols = solve_points(sys.prime(), gb.generators, sys.unknowns(), search, ctx);
  if (sols.points.size() >= 2) {
    out.kind = VarietyKind::MultipleOutputs;
    out.witnesses = sols.points;
    out.over_fp = true;
    out.free_outputs = sols.free_projection_vars;
    return out;
  }
  if (sols.complete) {
    out.over_fp = true;
    out.kind = sols.points.empty() ? VarietyKind::Empty : VarietyKind::UniqueOutputs;
    out.witnesses = sols.points;
    out.free_outputs.clear();
    return out;
  }
  if (sols.points.size() == 1 && outputs_determined) {
    // a point exists and the outputs are unique in the closure
    out.kind = VarietyKind::UniqueOutputs;
    out.witnesses = sols.points;
    out.over_fp = true;
    out.free_outputs.clear();
    return out;
  }
  out.kind = VarietyKind::Unknown;
  out.detail = "point enumeration incomplete: " + sols.incomplete_reason;
  return out;
}

}  // namespace acheck
