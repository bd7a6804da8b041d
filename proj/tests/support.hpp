#pragma once

// Independent brute-force helpers and random system generators for tests.
// Evaluation here uses machine words and does not touch the library's
// evaluation or oracle code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "acheck/circuit.hpp"
#include "acheck/polyir.hpp"
#include "acheck/verdict.hpp"

namespace ts {

using namespace acheck;

inline std::uint64_t word_pow(std::uint64_t b, std::uint32_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r = r * b % p;
  return r;
}

inline std::uint64_t eval_word(const Polynomial& poly, const std::map<std::uint32_t, std::uint64_t>& at, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (const auto& [m, c] : poly.terms()) {
    std::uint64_t t = c.value().get_ui() % p;
    for (const auto& [v, e] : m.factors()) t = t * word_pow(at.at(v.index), e, p) % p;
    acc = (acc + t) % p;
  }
  return acc;
}

// Calls fn for every assignment of `vars` over F_p.
template <class Fn>
void for_each_assignment(const std::vector<std::uint32_t>& vars, std::uint64_t p, Fn&& fn) {
  std::map<std::uint32_t, std::uint64_t> at;
  for (auto v : vars) at[v] = 0;
  while (true) {
    fn(at);
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++at[vars[i]] < p) break;
      at[vars[i]] = 0;
    }
    if (i == vars.size()) return;
  }
}

// Projections onto `projection` of the common zeros of `polys` over `vars`.
inline std::set<std::vector<std::uint64_t>> solution_set(const std::vector<Polynomial>& polys,
                                                        const std::vector<std::uint32_t>& vars, std::uint64_t p,
                                                        const std::vector<std::uint32_t>& projection) {
  std::set<std::vector<std::uint64_t>> out;
  for_each_assignment(vars, p, [&](const auto& at) {
    for (const auto& poly : polys) {
      if (eval_word(poly, at, p) != 0) return;
    }
    std::vector<std::uint64_t> proj;
    for (auto v : projection) proj.push_back(at.at(v));
    out.insert(proj);
  });
  return out;
}

inline std::vector<std::uint32_t> indices(const std::vector<VarId>& vs) {
  std::vector<std::uint32_t> out;
  for (VarId v : vs) out.push_back(v.index);
  return out;
}

// Polynomial compiled to word arithmetic over slots of a flat assignment.
struct WordPoly {
  struct Term {
    std::uint64_t coeff;
    std::vector<std::pair<std::size_t, std::uint32_t>> powers;
  };
  std::vector<Term> terms;

  std::uint64_t eval(const std::vector<std::uint64_t>& at, std::uint64_t p) const {
    std::uint64_t acc = 0;
    for (const auto& t : terms) {
      std::uint64_t v = t.coeff;
      for (auto [slot, e] : t.powers) v = v * word_pow(at[slot], e, p) % p;
      acc += v;
    }
    return acc % p;
  }
};

inline WordPoly compile(const Polynomial& poly, const std::map<std::uint32_t, std::size_t>& slot, std::uint64_t p) {
  WordPoly w;
  for (const auto& [m, c] : poly.terms()) {
    WordPoly::Term t{c.value().get_ui() % p, {}};
    for (const auto& [v, e] : m.factors()) t.powers.emplace_back(slot.at(v.index), e);
    w.terms.push_back(std::move(t));
  }
  return w;
}

// Ground truth over every declared variable. Under is returned as soon as
// one known-input assignment admits two output tuples.
inline Truth brute_truth(const ConstraintSystem& sys) {
  const std::uint64_t p = sys.prime().small_value();
  auto known = indices(sys.known());
  auto unknown = indices(sys.unknowns());
  std::map<std::uint32_t, std::size_t> slot;
  for (auto k : known) slot.emplace(k, slot.size());
  for (auto u : unknown) slot.emplace(u, slot.size());
  std::vector<std::size_t> out_slots;
  for (VarId o : sys.outputs()) out_slots.push_back(slot.at(o.index));
  std::vector<WordPoly> polys;
  for (const auto& c : sys.constraints()) polys.push_back(compile(c, slot, p));

  std::vector<std::uint64_t> at(slot.size(), 0);
  auto step = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) {
      if (++at[i] < p) return true;
      at[i] = 0;
    }
    return false;
  };
  const std::size_t nk = known.size(), n = slot.size();
  bool over = false;
  do {
    std::fill(at.begin() + static_cast<long>(nk), at.end(), 0);
    bool found = false;
    std::vector<std::uint64_t> first;
    do {
      bool ok = true;
      for (const auto& w : polys) {
        if (w.eval(at, p) != 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::vector<std::uint64_t> proj;
      for (auto s : out_slots) proj.push_back(at[s]);
      if (!found) {
        found = true;
        first = proj;
      } else if (proj != first) {
        return Truth::Under;
      }
    } while (step(nk, n));
    if (!found) over = true;
  } while (step(0, nk));
  return over ? Truth::Over : Truth::Exact;
}

enum class Shape { Linear, KCoefficient, Higher };

// Random system; the shape steers generation, the actual class is whatever
// classify_circuit says.
inline ConstraintSystem random_system(std::mt19937_64& rng, std::uint64_t p, int n_known, int n_unknown, int n_eq,
                                      Shape shape) {
  ConstraintSystem sys{Prime(p)};
  std::vector<VarId> known, unknown;
  for (int i = 0; i < n_known; ++i) known.push_back(sys.add_variable("k" + std::to_string(i), VarKind::Known));
  int n_out = 1 + static_cast<int>(rng() % std::min(2, n_unknown));
  for (int i = 0; i < n_unknown; ++i) {
    unknown.push_back(sys.add_variable((i < n_out ? "o" : "t") + std::to_string(i), i < n_out ? VarKind::Output : VarKind::Temp));
  }
  auto coin = [&](int num, int den) { return static_cast<int>(rng() % den) < num; };
  auto coeff = [&] { return FieldElement(sys.prime(), static_cast<long>(rng() % p)); };
  auto kpoly = [&](bool allow_k) {
    Polynomial c = Polynomial::constant(coeff());
    if (allow_k && !known.empty() && coin(1, 2)) {
      VarId k = known[rng() % known.size()];
      c += sys.var(k).scaled(FieldElement(sys.prime(), static_cast<long>(1 + rng() % (p - 1))));
      if (coin(1, 4)) c = c * sys.var(k);
    }
    return c;
  };
  std::vector<Polynomial> eqs;
  for (int e = 0; e < n_eq; ++e) {
    Polynomial f = kpoly(true);
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      VarId u = unknown[rng() % unknown.size()];
      Polynomial mono = sys.var(u);
      if (shape == Shape::Higher && coin(1, 2)) mono = mono * sys.var(unknown[rng() % unknown.size()]);
      Polynomial c = shape == Shape::Linear ? Polynomial::constant(FieldElement(sys.prime(), static_cast<long>(1 + rng() % (p - 1))))
                                            : kpoly(shape != Shape::Linear);
      if (c.is_zero()) c = sys.constant(1);
      f += c * mono;
    }
    if (!f.is_zero()) eqs.push_back(f);
  }
  if (eqs.empty()) eqs.push_back(sys.var(unknown[0]) - sys.constant(1));
  sys.set_constraints(eqs);
  return sys;
}

}  // namespace ts

#include "acheck/r1cs.hpp"

namespace ts {

// The one-hot decoder as a compiler would emit it (rows read A*B - C = 0).
inline R1csFile decoder_r1cs() {
  R1csFile f;
  const Prime& p = f.prime;
  auto t = [&](std::uint32_t w, long c) { return LinearTerm{w, FieldElement(p, c)}; };
  f.n_wires = 5;
  f.n_pub_out = 3;
  f.n_pub_in = 1;
  f.n_labels = 5;
  f.constraints = {
      {{t(1, 1)}, {t(4, 1)}, {}},
      {{t(2, 1)}, {t(0, -1), t(4, 1)}, {}},
      {{t(3, 1)}, {t(0, -1), t(3, 1)}, {}},
  };
  f.wire_to_label = {0, 1, 2, 3, 4};
  return f;
}

inline const char* kDecoderSym = "0,0,0,one\n1,1,0,main.out0\n2,2,0,main.out1\n3,3,0,main.success\n4,4,0,main.inp\n";

// Exactly the constraint list of the worked decoder example.
inline const char* kDecoderPolyIR =
    "input inp;\n"
    "output out0, out1, success;\n"
    "eq out0 * inp;\n"
    "eq out1 * (inp - 1);\n"
    "eq success * (success - 1);\n";

inline std::string fixture(const std::string& name) { return std::string(ACHECK_FIXTURE_DIR) + "/" + name; }

}  // namespace ts
