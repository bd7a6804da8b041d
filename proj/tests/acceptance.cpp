// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "acheck/bench.hpp"
#include "acheck/check.hpp"
#include "acheck/groebner.hpp"
#include "acheck/nonlinear.hpp"
#include "acheck/oracle.hpp"
#include "acheck/r1cs.hpp"
#include "r1cs_support.hpp"
#include "support.hpp"

using namespace acheck;

namespace {

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class Fn>
double timed(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return seconds_since(t0);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

bool has_output(const Verdict& v, const std::string& name) {
  const auto& f = v.evidence.free_outputs;
  return std::find(f.begin(), f.end(), name) != f.end();
}

void decoder_golden() {
  auto sys = parse_polyir(ts::kDecoderPolyIR);
  Verdict v;
  double t = timed([&] { v = check(sys); });
  bool ok = v.category == Category::PreciselyUnderconstrained && v.evidence.inputs == NamedValues{{"inp", "0"}} &&
            has_output(v, "out0") && t < 1.0;
  report(ok, "decoder-golden",
         std::string(to_string(v.category)) + ", inputs " + (v.evidence.inputs.empty() ? "{}" : v.evidence.inputs[0].first + "=" + v.evidence.inputs[0].second) +
             ", out0 free " + (has_output(v, "out0") ? "yes" : "no") + ", " + fmt(t) + " s (limit 1 s)");
}

void oracle_sweep() {
  std::mt19937_64 rng(2024);
  const std::uint64_t primes[] = {5, 7, 11, 13};
  const ts::Shape shapes[] = {ts::Shape::Linear, ts::Shape::KCoefficient, ts::Shape::Higher};
  std::size_t total = 0, agree = 0;
  std::map<CircuitClass, std::size_t> classes;
  std::string first_bad;
  double t = timed([&] {
    for (int i = 0; i < 600; ++i) {
      std::uint64_t p = primes[i % 4];
      ts::Shape shape = shapes[(i / 4) % 3];
      int nk = static_cast<int>(rng() % 3), nu = 1 + static_cast<int>(rng() % 4), ne = 1 + static_cast<int>(rng() % 5);
      if (shape == ts::Shape::KCoefficient && nk == 0) nk = 1;
      auto sys = ts::random_system(rng, p, nk, nu, ne, shape);
      ++classes[classify_circuit(sys)];
      Verdict v = check(sys);
      Truth truth = ts::brute_truth(sys);
      ++total;
      if (consistent(v.category, truth)) {
        ++agree;
      } else if (first_bad.empty()) {
        first_bad = "; first mismatch: " + std::string(to_string(v.category)) + " vs " + to_string(truth) + " on\n" + sys.to_string();
      }
    }
  });
  bool all_classes = classes.size() == 3;
  bool ok = total >= 500 && agree == total && all_classes && t < 120;
  report(ok, "oracle-sweep",
         std::to_string(agree) + "/" + std::to_string(total) + " consistent, classes linear/k-coeff/higher = " +
             std::to_string(classes[CircuitClass::PreciselyLinear]) + "/" + std::to_string(classes[CircuitClass::KCoefficient]) +
             "/" + std::to_string(classes[CircuitClass::HigherOrder]) + ", " + fmt(t) + " s (limit 120 s)" + first_bad);
}

// Dense random n x n system over BN254; full rank with overwhelming probability.
ConstraintSystem random_linear(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Prime p = Prime::bn254();
  auto big = [&] {
    mpz_class x = 0;
    for (int i = 0; i < 4; ++i) x = (x << 64) + mpz_class(std::to_string(rng()));
    return FieldElement(p, x);
  };
  ConstraintSystem sys{p};
  std::vector<VarId> u;
  for (std::size_t i = 0; i < n; ++i) u.push_back(sys.add_variable("u" + std::to_string(i), i % 10 == 0 ? VarKind::Output : VarKind::Temp));
  std::vector<Polynomial> rows;
  for (std::size_t r = 0; r < n; ++r) {
    Polynomial f = Polynomial::constant(big());
    for (std::size_t i = 0; i < n; ++i) f += sys.var(u[i]).scaled(big());
    rows.push_back(std::move(f));
  }
  sys.set_constraints(std::move(rows));
  return sys;
}

void linear_scale() {
  auto s1 = random_linear(1000, 1), s2 = random_linear(2000, 2);
  Verdict v1, v2;
  double t1 = timed([&] { v1 = check(s1); });
  double t2 = timed([&] { v2 = check(s2); });
  double ratio = t2 / t1;
  bool ok = v1.category == Category::PreciselyExactConstrained && v2.category == Category::PreciselyExactConstrained &&
            t1 < 30 && ratio < 12;
  report(ok, "linear-scale",
         "n=1000 " + std::string(to_string(v1.category)) + " in " + fmt(t1) + " s (limit 30 s); n=2000 " + to_string(v2.category) +
             " in " + fmt(t2) + " s, ratio " + fmt(ratio) + " (limit 12)");
}

void groebner_properties() {
  std::mt19937_64 rng(77);
  const std::uint64_t primes[] = {5, 7, 11, 13};
  CheckContext ctx{CheckConfig{}};
  int systems = 0, spoly = 0, member = 0, variety = 0;
  while (systems < 100) {
    std::uint64_t p = primes[rng() % 4];
    auto sys = ts::random_system(rng, p, 0, 1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3), ts::Shape::Higher);
    if (classify_circuit(sys) != CircuitClass::HigherOrder) continue;
    ++systems;
    std::vector<Polynomial> in(sys.constraints().begin(), sys.constraints().end());
    auto order = MonomialOrder::grevlex();
    auto gb = buchberger(in, order);
    const auto& g = gb.generators;
    bool s_ok = true;
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = i + 1; j < g.size(); ++j) s_ok = s_ok && reduce(s_polynomial(g[i], g[j], order), g, order).is_zero();
    }
    spoly += s_ok;
    // inputs lie in the basis ideal; the basis lies in the input ideal because
    // adjoining it changes nothing in the canonical reduced basis
    bool m_ok = std::all_of(in.begin(), in.end(), [&](const Polynomial& f) { return reduce(f, g, order).is_zero(); });
    auto joined = in;
    joined.insert(joined.end(), g.begin(), g.end());
    m_ok = m_ok && buchberger(joined, order).generators == g;
    member += m_ok;
    auto vars = ts::indices(sys.unknowns());
    auto outs = ts::solution_set(in, vars, p, ts::indices(sys.outputs()));
    VarietyKind expect = outs.empty() ? VarietyKind::Empty : outs.size() == 1 ? VarietyKind::UniqueOutputs : VarietyKind::MultipleOutputs;
    variety += variety_outputs(gb, sys, ctx).kind == expect;
  }
  report(spoly == 100 && member == 100 && variety == 100, "groebner-properties",
         "S-polynomials " + std::to_string(spoly) + "/100, ideal membership " + std::to_string(member) +
             "/100, variety agreement " + std::to_string(variety) + "/100");
}

void k_coefficient_heuristic() {
  auto a = parse_polyir("prime 7; input k; output o; eq o*k - k;");
  auto cands = undetermined_coeff_solutions(a);
  Binding k0{{a.find("k")->index, FieldElement(a.prime(), 0)}};
  bool cand_ok = !cands.empty() && cands[0].binding == k0;
  Verdict va = check(a);
  auto oa = oracle(a, 1000000);
  bool a_ok = cand_ok && va.category == Category::PreciselyUnderconstrained && va.evidence.inputs == NamedValues{{"k", "0"}} &&
              ts::brute_truth(a) == Truth::Under && oa && oa->aggregate == Truth::Under;

  auto b = parse_polyir("prime 7; input k; output o; eq o*k - 1; eq o*k - 2;");
  Verdict vb = check(b);
  Truth tb = ts::brute_truth(b);
  auto ob = oracle(b, 1000000);
  bool b_ok = vb.category == Category::AlgebraicOverconstrained && consistent(vb.category, tb) && ob && ob->aggregate == tb;
  report(a_ok && b_ok, "k-coefficient-heuristic",
         std::string("{o*k - k}: candidate k=0 ") + (cand_ok ? "first" : "missing") + ", " + to_string(va.category) + ", oracle " +
             to_string(ts::brute_truth(a)) + "; {o*k - 1, o*k - 2}: " + to_string(vb.category) + ", oracle " + to_string(tb));
}

void r1cs_fidelity() {
  std::mt19937_64 rng(31);
  int exact = 0;
  for (int i = 0; i < 100; ++i) {
    R1csFile f = ts::random_r1cs(rng);
    auto bytes = write_r1cs(f);
    exact += bytes == ts::encode(f) && write_r1cs(parse_r1cs(bytes)) == bytes;
  }
  Verdict poly = check(parse_polyir(ts::kDecoderPolyIR));
  Verdict r1cs = check(load_circuit(ts::fixture("decoder.r1cs")));
  bool same = r1cs.category == poly.category && r1cs.evidence.inputs == NamedValues{{"main.inp", "0"}} && has_output(r1cs, "main.out0");
  report(exact == 100 && same, "r1cs-fidelity",
         std::to_string(exact) + "/100 byte-exact round trips; .r1cs+.sym decoder " + to_string(r1cs.category) + " vs PolyIR " +
             to_string(poly.category));
}

void taxonomy_coverage() {
  const std::pair<const char*, const char*> fixtures[] = {
      {"decoder.polyir", "precisely-underconstrained"},   {"exact_linear.polyir", "precisely-exact-constrained"},
      {"over_linear.polyir", "precisely-overconstrained"}, {"algebraic_exact.polyir", "algebraic-exact-constrained"},
      {"algebraic_over.polyir", "algebraic-overconstrained"}, {"unknown_positive_dim.polyir", "unknown"},
  };
  int hit = 0;
  std::string detail;
  for (auto [file, label] : fixtures) {
    Verdict v = check(load_circuit(ts::fixture(file)));
    std::string got = to_json(v)["category"];
    bool ok = got == label;
    if (std::string(label) == "unknown") ok = ok && v.reason == UnknownReason::EnumerationBound;
    hit += ok;
    detail += std::string(detail.empty() ? "" : ", ") + file + " -> " + got;
  }
  report(hit == 6, "taxonomy-coverage", std::to_string(hit) + "/6 labelled correctly (" + detail + ")");
}

}  // namespace

int main() {
  decoder_golden();
  oracle_sweep();
  linear_scale();
  groebner_properties();
  k_coefficient_heuristic();
  r1cs_fidelity();
  taxonomy_coverage();
  return failures;
}
