#include "acheck/linear.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "acheck/check.hpp"
#include "acheck/errors.hpp"
#include "montgomery.hpp"
#include "regions.hpp"

namespace acheck {

bool ParametricMatrix::constant_entries() const {
  for (const auto& row : rows) {
    for (const auto& [c, e] : row) {
      if (!e.is_constant()) return false;
    }
  }
  for (const auto& r : rhs) {
    if (!r.denominator().is_constant()) return false;
  }
  return true;
}

std::vector<std::vector<RationalFunction>> ParametricMatrix::dense() const {
  std::vector<std::vector<RationalFunction>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<RationalFunction> row(columns.size() + 1, RationalFunction(prime));
    for (const auto& [c, e] : rows[i]) row[c] = e;
    row.back() = rhs[i];
    out.push_back(std::move(row));
  }
  return out;
}

ParametricMatrix to_matrix(const ConstraintSystem& sys) {
  ParametricMatrix m(sys.prime());
  m.columns = sys.unknowns();
  std::map<std::uint32_t, std::uint32_t> col_of;
  for (std::uint32_t c = 0; c < m.columns.size(); ++c) col_of[m.columns[c].index] = c;
  for (const auto& p : sys.constraints()) {
    std::vector<ParametricMatrix::Entry> row;
    RationalFunction rhs(sys.prime());
    for (auto& [mono, coeff] : p.collect_by_unknowns()) {
      if (mono.is_one()) {
        rhs = RationalFunction(-coeff);
      } else if (mono.total_degree() == 1) {
        row.emplace_back(col_of.at(mono.factors()[0].first.index), RationalFunction(coeff));
      } else {
        throw UsageError("to_matrix: constraint is not linear in the unknowns: " + p.to_string(sys.namer()));
      }
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    m.rows.push_back(std::move(row));
    m.rhs.push_back(std::move(rhs));
  }
  return m;
}

const UnknownStatus* LinearSolution::status(std::uint32_t var_index) const {
  for (const auto& u : unknowns) {
    if (u.var.index == var_index) return &u;
  }
  return nullptr;
}

namespace {

// Arithmetic for constant matrices: raw residues, right-hand sides are
// polynomials in K.
struct NumericArith {
  using E = mpz_class;
  using R = Polynomial;
  Prime prime;

  bool zero(const E& e) const { return e == 0; }
  bool constant(const E&) const { return true; }
  E inv(const E& e, std::vector<Polynomial>&) const {
    E r;
    mpz_invert(r.get_mpz_t(), e.get_mpz_t(), prime.value().get_mpz_t());
    return r;
  }
  E mul(const E& a, const E& b) const {
    E r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), prime.value().get_mpz_t());
    return r;
  }
  E neg(const E& a) const { return a == 0 ? a : E(prime.value() - a); }
  E sub(const E& a, const E& b) const {
    E r = a - b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), prime.value().get_mpz_t());
    return r;
  }
  R scale(const R& r, const E& e) const { return r.is_zero() ? r : r.scaled(FieldElement(prime, e)); }
  R sub_scaled(const R& a, const E& f, const R& b) const { return b.is_zero() ? a : a - b.scaled(FieldElement(prime, f)); }
  bool rhs_zero(const R& r) const { return r.is_zero(); }
};

struct ParametricArith {
  using E = RationalFunction;
  using R = RationalFunction;
  Prime prime;

  bool zero(const E& e) const { return e.is_zero(); }
  bool constant(const E& e) const { return e.is_constant(); }
  E inv(const E& e, std::vector<Polynomial>& ledger) const {
    if (!e.numerator().is_constant()) {
      Polynomial n = e.numerator().monic();
      if (std::find(ledger.begin(), ledger.end(), n) == ledger.end()) ledger.push_back(n);
    }
    return e.inv();
  }
  E mul(const E& a, const E& b) const { return a * b; }
  E sub(const E& a, const E& b) const { return a - b; }
  E neg(const E& a) const { return -a; }
  R scale(const R& r, const E& e) const { return r * e; }
  R sub_scaled(const R& a, const E& f, const R& b) const { return b.is_zero() ? a : a - f * b; }
  bool rhs_zero(const R& r) const { return r.is_zero(); }
};

template <class A>
struct Eliminated {
  std::vector<std::vector<std::pair<std::uint32_t, typename A::E>>> rows;
  std::vector<typename A::R> rhs;
  std::vector<std::optional<std::uint32_t>> pivot_row;  // per column
  std::vector<Polynomial> ledger;
};

template <class A>
Eliminated<A> eliminate(const A& arith, std::size_t ncols, Eliminated<A> st, const CheckContext* ctx) {
  using E = typename A::E;
  using Row = std::vector<std::pair<std::uint32_t, E>>;
  auto& rows = st.rows;
  auto& rhs = st.rhs;
  st.pivot_row.assign(ncols, std::nullopt);

  std::vector<std::set<std::uint32_t>> col_rows(ncols);
  for (std::uint32_t r = 0; r < rows.size(); ++r) {
    for (const auto& [c, e] : rows[r]) col_rows[c].insert(r);
  }
  auto key = [&](std::uint32_t r) {
    bool has_const = std::any_of(rows[r].begin(), rows[r].end(), [&](const auto& t) { return arith.constant(t.second); });
    return std::make_tuple(has_const ? 0 : 1, rows[r].size(), r);
  };
  std::set<std::tuple<int, std::size_t, std::uint32_t>> active;
  std::vector<bool> is_active(rows.size(), true);
  for (std::uint32_t r = 0; r < rows.size(); ++r) active.insert(key(r));

  while (!active.empty()) {
    if (ctx) ctx->tick();
    auto [kc, nnz, prow] = *active.begin();
    active.erase(active.begin());
    is_active[prow] = false;
    if (nnz == 0) continue;
    Row& pr = rows[prow];
    // column: constant entry first, then fewest occurrences, then lowest index
    std::size_t best = 0;
    auto rank = [&](std::size_t k) {
      return std::make_tuple(arith.constant(pr[k].second) ? 0 : 1, col_rows[pr[k].first].size(), pr[k].first);
    };
    for (std::size_t k = 1; k < pr.size(); ++k) {
      if (rank(k) < rank(best)) best = k;
    }
    const std::uint32_t col = pr[best].first;
    E inv = arith.inv(pr[best].second, st.ledger);
    for (auto& [c, e] : pr) e = arith.mul(e, inv);
    rhs[prow] = arith.scale(rhs[prow], inv);
    st.pivot_row[col] = prow;

    std::vector<std::uint32_t> targets(col_rows[col].begin(), col_rows[col].end());
    for (std::uint32_t r : targets) {
      if (r == prow) continue;
      Row& rr = rows[r];
      auto it = std::lower_bound(rr.begin(), rr.end(), col, [](const auto& t, std::uint32_t c) { return t.first < c; });
      E f = it->second;
      if (is_active[r]) active.erase(key(r));
      for (const auto& [c, e] : rr) col_rows[c].erase(r);
      Row merged;
      merged.reserve(rr.size() + pr.size());
      std::size_t i = 0, j = 0;
      while (i < rr.size() || j < pr.size()) {
        if (j == pr.size() || (i < rr.size() && rr[i].first < pr[j].first)) {
          merged.push_back(std::move(rr[i++]));
        } else if (i == rr.size() || pr[j].first < rr[i].first) {
          E v = arith.neg(arith.mul(f, pr[j].second));
          if (!arith.zero(v)) merged.emplace_back(pr[j].first, std::move(v));
          ++j;
        } else {
          E v = arith.sub(rr[i].second, arith.mul(f, pr[j].second));
          if (!arith.zero(v)) merged.emplace_back(rr[i].first, std::move(v));
          ++i;
          ++j;
        }
      }
      rr = std::move(merged);
      for (const auto& [c, e] : rr) col_rows[c].insert(r);
      rhs[r] = arith.sub_scaled(rhs[r], f, rhs[prow]);
      if (is_active[r]) active.insert(key(r));
    }
  }
  return st;
}

LinearSolution finish_solution(const ParametricMatrix& m, std::vector<std::vector<ParametricMatrix::Entry>> rows,
                               std::vector<RationalFunction> rhs, const std::vector<std::optional<std::uint32_t>>& pivot_row,
                               std::vector<Polynomial> ledger) {
  LinearSolution sol;
  sol.ledger = std::move(ledger);
  for (std::uint32_t c = 0; c < m.columns.size(); ++c) {
    VarId v = m.columns[c];
    if (!pivot_row[c]) {
      sol.unknowns.push_back({v, false, RationalFunction(Polynomial::variable(m.prime, v)), {v}});
      continue;
    }
    std::uint32_t r = *pivot_row[c];
    RationalFunction expr = rhs[r];
    std::vector<VarId> deps;
    for (const auto& [cc, e] : rows[r]) {
      if (cc == c) continue;
      deps.push_back(m.columns[cc]);
      expr = expr - e * RationalFunction(Polynomial::variable(m.prime, m.columns[cc]));
    }
    sol.unknowns.push_back({v, true, expr, deps});
    ++sol.rank;
  }
  std::vector<bool> used(rows.size(), false);
  for (const auto& pr : pivot_row) {
    if (pr) used[*pr] = true;
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!used[r] && rows[r].empty() && !rhs[r].is_zero()) sol.inconsistent.push_back(rhs[r]);
  }
  return sol;
}

// Dense elimination for well-filled constant matrices. Right-hand sides are
// carried as extra columns, one per K-monomial.
bool dense_worthwhile(const ParametricMatrix& m) {
  if (!detail::Mont256::fits(m.prime.value())) return false;
  std::size_t nnz = 0;
  for (const auto& r : m.rows) nnz += r.size();
  const std::size_t cells = m.rows.size() * m.columns.size();
  return cells >= 1024 && cells <= 20'000'000 && nnz * 5 >= cells;
}

LinearSolution dense_gauss_jordan(const ParametricMatrix& m, const CheckContext* ctx) {
  using Elt = detail::Mont256::Elt;
  const detail::Mont256 mont(m.prime.value());
  const std::size_t nrows = m.rows.size(), ncols = m.columns.size();

  std::vector<Polynomial> rhs_poly;
  std::map<Monomial, std::size_t> mono_col;
  for (const auto& r : m.rhs) {
    const FieldElement d = r.denominator().constant_term();
    rhs_poly.push_back(r.numerator().scaled(d.inv()));
    for (const auto& [mono, c] : rhs_poly.back().terms()) mono_col.emplace(mono, 0);
  }
  std::vector<Monomial> monos;
  for (auto& [mono, col] : mono_col) {
    col = ncols + monos.size();
    monos.push_back(mono);
  }
  const std::size_t width = ncols + monos.size();
  std::vector<Elt> a(nrows * width, Elt{});
  auto at = [&](std::size_t r, std::size_t c) -> Elt& { return a[r * width + c]; };
  for (std::size_t r = 0; r < nrows; ++r) {
    for (const auto& [c, e] : m.rows[r]) at(r, c) = mont.to(e.constant_value().value());
    for (const auto& [mono, c] : rhs_poly[r].terms()) at(r, mono_col.at(mono)) = mont.to(c.value());
  }

  // Crout factorization with leftmost pivot columns: L (row-major) and U
  // (stored by column) are built from dot products, reduced once per entry
  const std::size_t maxrank = std::min(nrows, ncols);
  std::vector<Elt> l(nrows * maxrank, Elt{}), ut(width * maxrank, Elt{});
  std::vector<std::size_t> order(nrows);
  for (std::size_t r = 0; r < nrows; ++r) order[r] = r;
  auto residual = [&](std::size_t row, std::size_t col, std::size_t k) {
    detail::Mont256::Wide acc;
    const Elt* lr = &l[row * maxrank];
    const Elt* uc = &ut[col * maxrank];
    for (std::size_t i = 0; i < k; ++i) detail::Mont256::mac(acc, lr[i], uc[i]);
    return mont.sub(at(row, col), mont.reduce(acc));
  };
  std::vector<std::uint32_t> pivot_cols;
  std::size_t rank = 0;
  std::vector<Elt> v(nrows);
  for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
    if (ctx) ctx->tick();
    std::size_t found = nrows;
    for (std::size_t q = rank; q < nrows; ++q) {
      v[order[q]] = residual(order[q], c, rank);
      if (found == nrows && !detail::Mont256::zero(v[order[q]])) found = q;
    }
    if (found == nrows) continue;
    std::swap(order[rank], order[found]);
    const std::size_t prow = order[rank];
    const Elt inv = mont.inv(v[prow]);
    for (std::size_t q = rank + 1; q < nrows; ++q) l[order[q] * maxrank + rank] = mont.mul(v[order[q]], inv);
    ut[c * maxrank + rank] = v[prow];
    for (std::size_t j = c + 1; j < width; ++j) ut[j * maxrank + rank] = residual(prow, j, rank);
    pivot_cols.push_back(static_cast<std::uint32_t>(c));
    ++rank;
  }
  // rows left over are zero on the matrix columns; keep their right-hand residuals
  std::vector<std::vector<Elt>> leftover;
  for (std::size_t q = rank; q < nrows; ++q) {
    std::vector<Elt> rr;
    for (std::size_t j = ncols; j < width; ++j) rr.push_back(residual(order[q], j, rank));
    leftover.push_back(std::move(rr));
  }
  // echelon rows of U replace the input, normalized to unit pivots
  std::fill(a.begin(), a.end(), Elt{});
  for (std::size_t k = 0; k < rank; ++k) {
    const Elt inv = mont.inv(ut[pivot_cols[k] * maxrank + k]);
    at(k, pivot_cols[k]) = mont.one();
    for (std::size_t j = pivot_cols[k] + 1; j < width; ++j) at(k, j) = mont.mul(ut[j * maxrank + k], inv);
  }
  for (std::size_t q = rank; q < nrows; ++q) {
    for (std::size_t j = ncols; j < width; ++j) at(q, j) = leftover[q - rank][j - ncols];
  }
  l.clear();
  l.shrink_to_fit();
  ut.clear();
  ut.shrink_to_fit();

  // back substitution; a pivot row is by now zero in later pivot columns,
  // so only free and right-hand-side columns change
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < width; ++j) {
    if (j >= ncols || !is_pivot[j]) rest.push_back(j);
  }
  for (std::size_t k = rank; k-- > 0;) {
    if (ctx) ctx->tick();
    const std::size_t c = pivot_cols[k];
    const Elt* prow = &a[k * width];
    auto first = std::upper_bound(rest.begin(), rest.end(), c);
    for (std::size_t r = 0; r < k; ++r) {
      Elt f = at(r, c);
      if (detail::Mont256::zero(f)) continue;
      Elt* row = &a[r * width];
      row[c] = Elt{};
      for (auto it = first; it != rest.end(); ++it) {
        if (!detail::Mont256::zero(prow[*it])) row[*it] = mont.sub(row[*it], mont.mul(f, prow[*it]));
      }
    }
  }

  std::vector<std::vector<ParametricMatrix::Entry>> rows(nrows);
  std::vector<RationalFunction> rhs;
  std::vector<std::optional<std::uint32_t>> pivot_row(ncols);
  for (std::size_t k = 0; k < rank; ++k) pivot_row[pivot_cols[k]] = static_cast<std::uint32_t>(k);
  for (std::size_t r = 0; r < nrows; ++r) {
    for (std::size_t c = 0; c < ncols; ++c) {
      if (!detail::Mont256::zero(at(r, c))) {
        rows[r].emplace_back(static_cast<std::uint32_t>(c), RationalFunction::constant(FieldElement(m.prime, mont.from(at(r, c)))));
      }
    }
    Polynomial poly(m.prime);
    for (std::size_t i = 0; i < monos.size(); ++i) {
      const Elt& e = at(r, ncols + i);
      if (!detail::Mont256::zero(e)) poly.add_term(monos[i], FieldElement(m.prime, mont.from(e)));
    }
    rhs.emplace_back(std::move(poly));
  }
  return finish_solution(m, std::move(rows), std::move(rhs), pivot_row, {});
}

}  // namespace

LinearSolution gauss_jordan(const ParametricMatrix& m, const CheckContext* ctx) {
  const std::size_t ncols = m.columns.size();
  if (m.constant_entries() && dense_worthwhile(m)) return dense_gauss_jordan(m, ctx);
  if (m.constant_entries()) {
    NumericArith arith{m.prime};
    Eliminated<NumericArith> st;
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
      std::vector<std::pair<std::uint32_t, mpz_class>> row;
      for (const auto& [c, e] : m.rows[i]) row.emplace_back(c, e.constant_value().value());
      st.rows.push_back(std::move(row));
      const FieldElement d = m.rhs[i].denominator().constant_term();
      st.rhs.push_back(m.rhs[i].numerator().scaled(d.inv()));
    }
    st = eliminate(arith, ncols, std::move(st), ctx);
    std::vector<std::vector<ParametricMatrix::Entry>> rows;
    std::vector<RationalFunction> rhs;
    for (std::size_t i = 0; i < st.rows.size(); ++i) {
      std::vector<ParametricMatrix::Entry> row;
      for (const auto& [c, e] : st.rows[i]) row.emplace_back(c, RationalFunction::constant(FieldElement(m.prime, e)));
      rows.push_back(std::move(row));
      rhs.push_back(RationalFunction(st.rhs[i]));
    }
    return finish_solution(m, std::move(rows), std::move(rhs), st.pivot_row, {});
  }
  ParametricArith arith{m.prime};
  Eliminated<ParametricArith> st;
  st.rows = m.rows;
  st.rhs = m.rhs;
  st = eliminate(arith, ncols, std::move(st), ctx);
  return finish_solution(m, std::move(st.rows), std::move(st.rhs), st.pivot_row, std::move(st.ledger));
}

bool check_uniqueness(const LinearSolution& sol, const std::vector<VarId>& outputs) {
  for (VarId o : outputs) {
    const UnknownStatus* s = sol.status(o.index);
    if (!s) continue;  // not an unknown of this system
    if (!s->pivot || !s->depends_on.empty()) return false;
  }
  return true;
}

namespace {

// Two solutions differing in an output, built by moving one free unknown.
Verdict under_from_solution(const ConstraintSystem& sys, const LinearSolution& sol) {
  const Prime& p = sys.prime();
  Verdict v;
  v.category = Category::PreciselyUnderconstrained;
  std::optional<VarId> lever;
  for (VarId o : sys.outputs()) {
    const UnknownStatus* s = sol.status(o.index);
    if (!s || (s->pivot && s->depends_on.empty())) continue;
    v.evidence.free_outputs.push_back(sys.name(o));
    if (!lever) lever = s->pivot ? s->depends_on.front() : o;
  }
  for (long shift : {0L, 1L}) {
    Binding frees;
    for (const auto& u : sol.unknowns) {
      if (!u.pivot) frees.emplace(u.var.index, FieldElement(p, u.var == *lever ? shift : 0));
    }
    Binding outs;
    for (VarId o : sys.outputs()) {
      const UnknownStatus* s = sol.status(o.index);
      if (!s) continue;
      outs.emplace(o.index, s->pivot ? s->expression.substitute(frees).constant_value() : frees.at(o.index));
    }
    v.evidence.output_witnesses.push_back(name_binding(sys, outs));
  }
  return v;
}

}  // namespace

Verdict check_linear(const ConstraintSystem& sys, CheckContext& ctx) {
  ParametricMatrix m = to_matrix(sys);
  LinearSolution sol = gauss_jordan(m, &ctx);

  if (detail::known_support(sys).empty()) {
    Verdict v;
    if (!sol.inconsistent.empty()) {
      v.category = Category::PreciselyOverconstrained;
      v.evidence.notes.push_back("row reduces to 0 = " + sol.inconsistent.front().to_string(sys.namer()));
    } else if (check_uniqueness(sol, sys.outputs())) {
      v.category = Category::PreciselyExactConstrained;
    } else {
      v = under_from_solution(sys, sol);
    }
    return v;
  }

  // known inputs occur only on the right-hand side
  detail::RegionAnalysis ra(sys, ctx);
  if (!sol.inconsistent.empty()) {
    std::optional<Polynomial> c;
    for (const auto& v : sol.inconsistent) {
      if (v.is_constant()) {
        c.reset();
        break;
      }
      if (!c) c = v.numerator();
    }
    if (c) {
      // 0 = c(K): overconstrained off the zero set of c
      ra.add_zero_set(c->monic());
      ra.add_generic({Truth::Over}, {*c});
    } else {
      ra.add_generic({Truth::Over}, {});
    }
  } else if (check_uniqueness(sol, sys.outputs())) {
    ra.add_generic({Truth::Exact}, {});
  } else {
    ra.add_generic({Truth::Under}, {});
  }
  return ra.finish(!ra.relaxed(), {});
}

}  // namespace acheck
