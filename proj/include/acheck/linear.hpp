#pragma once

#include <optional>
#include <vector>

#include "acheck/circuit.hpp"
#include "acheck/rational.hpp"
#include "acheck/verdict.hpp"

namespace acheck {

// Augmented matrix of a linear system in the unknowns. Rows are sparse:
// entries hold (column, coefficient) sorted by column, zero entries absent.
struct ParametricMatrix {
  using Entry = std::pair<std::uint32_t, RationalFunction>;

  Prime prime;
  std::vector<VarId> columns;  // unknowns, ascending index
  std::vector<std::vector<Entry>> rows;
  std::vector<RationalFunction> rhs;

  explicit ParametricMatrix(const Prime& p) : prime(p) {}
  bool constant_entries() const;
  // Dense view for small matrices (tests, printing).
  std::vector<std::vector<RationalFunction>> dense() const;
};

// Row i encodes constraint i: unknown coefficients in their columns, the
// K-only part negated into the right-hand side. Throws UsageError when a
// constraint has degree two or more in the unknowns.
ParametricMatrix to_matrix(const ConstraintSystem& sys);

struct UnknownStatus {
  VarId var;
  bool pivot = false;
  // var = expression, in K and the free unknowns listed in `depends_on`.
  RationalFunction expression;
  std::vector<VarId> depends_on;
};

struct LinearSolution {
  std::vector<UnknownStatus> unknowns;  // column order
  // Right-hand sides of rows reduced to 0 = c with c nonzero.
  std::vector<RationalFunction> inconsistent;
  // Monic K-polynomials assumed nonzero when a pivot was inverted.
  std::vector<Polynomial> ledger;
  std::size_t rank = 0;

  const UnknownStatus* status(std::uint32_t var_index) const;
};

// Gauss-Jordan elimination to reduced row-echelon form. Constant pivots are
// taken before nonconstant ones; matrices with constant entries take a
// sparse numeric path with fewest-entries pivoting.
LinearSolution gauss_jordan(const ParametricMatrix& m, const CheckContext* ctx = nullptr);

// Every output is a pivot whose expression depends on no free unknown.
bool check_uniqueness(const LinearSolution& sol, const std::vector<VarId>& outputs);

// Precisely linear circuits. A system with known inputs only on the
// right-hand side splits on the zero sets of the inconsistency values.
Verdict check_linear(const ConstraintSystem& sys, CheckContext& ctx);

}  // namespace acheck
