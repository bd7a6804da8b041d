#include <gtest/gtest.h>

#include <random>

#include "acheck/circuit.hpp"
#include "acheck/errors.hpp"
#include "support.hpp"

using namespace acheck;

namespace {

ConstraintSystem decoder(const Prime& p) {
  ConstraintSystem s(p);
  VarId inp = s.add_variable("inp", VarKind::Known);
  VarId o0 = s.add_variable("out0", VarKind::Output);
  VarId o1 = s.add_variable("out1", VarKind::Output);
  VarId sc = s.add_variable("success", VarKind::Output);
  s.add_constraint(s.var(o0) * s.var(inp));
  s.add_constraint(s.var(o1) * (s.var(inp) - s.constant(1)));
  s.add_constraint(s.var(sc) * (s.var(sc) - s.constant(1)));
  return s;
}

}  // namespace

TEST(Circuit, ClassifyConstraint) {
  ConstraintSystem s(Prime(7ul));
  VarId x = s.add_variable("x", VarKind::Output), y = s.add_variable("y", VarKind::Output);
  VarId inp = s.add_variable("inp", VarKind::Known);
  EXPECT_EQ(classify_constraint(s.var(x) * s.constant(2) + s.var(y) * s.constant(3) - s.constant(1)),
            ConstraintClass::PreciselyLinear);
  EXPECT_EQ(classify_constraint(s.var(x) * s.var(inp)), ConstraintClass::KCoefficientLinear);
  EXPECT_EQ(classify_constraint(s.var(x) * (s.var(x) - s.constant(1))), ConstraintClass::HigherOrder);
  // known inputs only in the constant part keep the constraint precisely linear
  EXPECT_EQ(classify_constraint(s.var(x) - s.var(inp) * s.var(inp)), ConstraintClass::PreciselyLinear);
}

TEST(Circuit, ClassifyCircuit) {
  EXPECT_EQ(classify_circuit(decoder(Prime(7ul))), CircuitClass::HigherOrder);
  ConstraintSystem lin(Prime(7ul));
  VarId x = lin.add_variable("x", VarKind::Output), y = lin.add_variable("y", VarKind::Output);
  lin.add_constraint(lin.var(x) * lin.constant(2) + lin.var(y) * lin.constant(3) - lin.constant(1));
  lin.add_constraint(lin.var(x) - lin.var(y));
  EXPECT_EQ(classify_circuit(lin), CircuitClass::PreciselyLinear);

  ConstraintSystem kc(Prime(7ul));
  VarId inp = kc.add_variable("inp", VarKind::Known);
  VarId o0 = kc.add_variable("out0", VarKind::Output), o1 = kc.add_variable("out1", VarKind::Output);
  kc.add_constraint(kc.var(o0) * kc.var(inp));
  kc.add_constraint(kc.var(o1) - kc.var(inp));
  // first row: unknown coefficient inp is nonconstant; second: constant coefficients; none quadratic
  EXPECT_EQ(classify_constraint(kc.constraints()[0]), ConstraintClass::KCoefficientLinear);
  EXPECT_EQ(classify_constraint(kc.constraints()[1]), ConstraintClass::PreciselyLinear);
  EXPECT_EQ(classify_circuit(kc), CircuitClass::KCoefficient);

  EXPECT_THROW(classify_circuit(ConstraintSystem(Prime(7ul))), UsageError);
}

TEST(Circuit, DuplicateVariableIsUsageError) {
  ConstraintSystem s(Prime(7ul));
  s.add_variable("a", VarKind::Temp);
  EXPECT_THROW(s.add_variable("a", VarKind::Output), UsageError);
}

TEST(Circuit, ReduceDegreeCube) {
  ConstraintSystem s(Prime(7ul));
  VarId x = s.add_variable("x", VarKind::Output);
  s.add_constraint(s.var(x) * s.var(x) * s.var(x) + s.constant(5));
  ConstraintSystem r = reduce_degree(s);
  ASSERT_EQ(r.constraints().size(), 2u);
  ASSERT_EQ(r.variables().size(), 2u);
  VarId y = r.variables()[1].id;
  EXPECT_EQ(y.kind, VarKind::Aux);
  EXPECT_EQ(r.constraints()[0], r.var(x) * r.var(y) + r.constant(5));
  EXPECT_EQ(r.constraints()[1], r.var(x) * r.var(x) - r.var(y));
}

TEST(Circuit, ReduceDegreeQuarticMatchesEnumeration) {
  ConstraintSystem s(Prime(7ul));
  VarId x = s.add_variable("x", VarKind::Output);
  s.add_constraint(s.var(x).pow(4) - s.constant(1));
  ConstraintSystem r = reduce_degree(s);
  VarId y = r.variables()[1].id;
  EXPECT_EQ(r.constraints()[0], r.var(y) * r.var(y) - r.constant(1));
  EXPECT_EQ(r.constraints()[1], r.var(x) * r.var(x) - r.var(y));
  auto before = ts::solution_set(s.constraints(), {0}, 7, {0});
  auto after = ts::solution_set(r.constraints(), {0, 1}, 7, {0});
  EXPECT_EQ(before, after);
  EXPECT_EQ(before.size(), 2u);  // x^4 = 1 over F_7: x = 1, 6
}

TEST(Circuit, ReduceDegreeNoOpOnQuadratic) {
  auto d = decoder(Prime(7ul));
  auto r = reduce_degree(d);
  EXPECT_EQ(r.constraints(), d.constraints());
  EXPECT_EQ(r.variables().size(), d.variables().size());
}

TEST(CircuitProperty, ReduceDegreePreservesSolutionsAndIsIdempotent) {
  std::mt19937_64 rng(21);
  for (unsigned long q : {5ul, 7ul}) {
    for (int i = 0; i < 40; ++i) {
      ConstraintSystem s{Prime(q)};
      std::vector<VarId> vs;
      int n = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < n; ++k) vs.push_back(s.add_variable("v" + std::to_string(k), k == 0 ? VarKind::Output : VarKind::Temp));
      for (int e = 0; e < 2; ++e) {
        Polynomial f = s.constant(static_cast<long>(rng() % q));
        for (int t = 0; t < 3; ++t) {
          Polynomial m = s.constant(static_cast<long>(1 + rng() % (q - 1)));
          int deg = static_cast<int>(rng() % 5);
          for (int d = 0; d < deg; ++d) m = m * s.var(vs[rng() % vs.size()]);
          f += m;
        }
        s.add_constraint(f);
      }
      ConstraintSystem r = reduce_degree(s);
      for (const auto& c : r.constraints()) EXPECT_LE(c.degree_in(kUnknownKinds), 2u);
      std::vector<std::uint32_t> orig = ts::indices(s.unknowns());
      EXPECT_EQ(ts::solution_set(s.constraints(), orig, q, orig),
                ts::solution_set(r.constraints(), ts::indices(r.unknowns()), q, orig));
      ConstraintSystem again = reduce_degree(r);
      EXPECT_EQ(again.constraints(), r.constraints());
      EXPECT_EQ(again.variables().size(), r.variables().size());
    }
  }
}

TEST(CircuitProperty, ClassificationFollowsQuantifierRules) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 200; ++i) {
    auto shape = static_cast<ts::Shape>(rng() % 3);
    ConstraintSystem s = ts::random_system(rng, 7, 1 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 3),
                                           1 + static_cast<int>(rng() % 4), shape);
    bool higher = false, kcoef = false;
    for (const auto& c : s.constraints()) {
      auto cls = classify_constraint(c);
      bool is_higher = c.degree_in(kUnknownKinds) >= 2;
      bool nonconst = false;
      for (const auto& [m, coeff] : c.collect_by_unknowns()) nonconst |= !m.is_one() && !coeff.is_constant();
      EXPECT_EQ(cls == ConstraintClass::HigherOrder, is_higher);
      EXPECT_EQ(cls == ConstraintClass::KCoefficientLinear, !is_higher && nonconst);
      higher |= is_higher;
      kcoef |= !is_higher && nonconst;
    }
    auto expect = higher ? CircuitClass::HigherOrder : kcoef ? CircuitClass::KCoefficient : CircuitClass::PreciselyLinear;
    EXPECT_EQ(classify_circuit(s), expect);
    EXPECT_EQ(classify_circuit(s), classify_circuit(s));
  }
}

TEST(Circuit, PartitionVariables) {
  // decoder: wire 0 = one, outputs 1..3, one public input
  auto part = partition_variables({5, 3, 1, 0});
  EXPECT_EQ(part.output, (std::vector<std::uint32_t>{1, 2, 3}));
  EXPECT_EQ(part.known, (std::vector<std::uint32_t>{4}));
  EXPECT_TRUE(part.temp.empty());

  auto none = partition_variables({4, 0, 1, 1});
  EXPECT_TRUE(none.output.empty());
  EXPECT_EQ(none.known, (std::vector<std::uint32_t>{1, 2}));
  EXPECT_EQ(none.temp, (std::vector<std::uint32_t>{3}));
  for (const auto* set : {&none.known, &none.temp, &none.output}) {
    EXPECT_EQ(std::count(set->begin(), set->end(), 0u), 0);
  }
  EXPECT_THROW(partition_variables({3, 2, 1, 0}), FormatError);
}

TEST(Circuit, WithKindsRewritesMonomials) {
  auto d = decoder(Prime(7ul));
  auto r = d.with_kinds({{1, VarKind::Temp}});
  EXPECT_EQ(r.outputs().size(), 2u);
  for (const auto& [m, c] : r.constraints()[0].terms()) {
    for (const auto& [v, e] : m.factors()) {
      if (v.index == 1) EXPECT_EQ(v.kind, VarKind::Temp);
    }
  }
}
