#pragma once

// Case analysis over the known-input space. A checker covers K-space with
// regions (the generic region where every assumed-nonzero polynomial is
// nonzero, the zero sets of those polynomials, and single sample points)
// and states, per region, which ground-truth labels its points may have and
// which labels certainly occur. The combination yields the verdict.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "acheck/circuit.hpp"
#include "acheck/verdict.hpp"

namespace acheck::detail {

struct Outlook {
  std::set<Truth> possible;
  std::set<Truth> certain;
};

Outlook outlook_of(const Verdict& v, bool no_known);

// Runs a nested check that shares the deadline and the recheck budget.
// Returns Unknown once the budget is spent.
Verdict nested_check(const ConstraintSystem& sys, CheckContext& ctx);

// Known variables occurring in the constraints or in `extra`.
std::vector<VarId> known_support(const ConstraintSystem& sys, const std::vector<Polynomial>& extra = {});

class RegionAnalysis {
 public:
  RegionAnalysis(const ConstraintSystem& sys, CheckContext& ctx) : sys_(sys), ctx_(ctx) {}

  bool under_found() const { return under_.has_value(); }

  // Region where every polynomial in `nonzero` is nonzero. A sample point
  // establishes the region is inhabited; when U is possible, sample points
  // are also checked for a concrete underconstraint witness.
  void add_generic(std::set<Truth> possible, const std::vector<Polynomial>& nonzero);

  // Region {L = 0}, resolved by root finding, linear substitution or
  // enumeration. Unresolvable zero sets are skipped and reported in notes.
  void add_zero_set(const Polynomial& L);

  // Specialization of the system under `binding` (known variables only).
  // Returns the nested verdict.
  Verdict add_point(const Binding& binding);

  void note(std::string s) { notes_.push_back(std::move(s)); }
  bool relaxed() const { return relaxed_; }

  // Combines the regions. `precise_grade` permits precise exact/over verdicts.
  Verdict finish(bool precise_grade, const std::vector<Polynomial>& ledger);

 private:
  void add_subsystem(const ConstraintSystem& sub, const Binding& fixed, const std::optional<std::pair<VarId, Polynomial>>& solved);
  void accept_under(const Verdict& sub, const Binding& fixed, const std::optional<std::pair<VarId, Polynomial>>& solved);
  std::vector<Binding> sample_points(const std::vector<Polynomial>& nonzero, std::size_t limit) const;

  const ConstraintSystem& sys_;
  CheckContext& ctx_;
  std::vector<Outlook> regions_;
  std::optional<Verdict> under_;
  std::vector<std::string> notes_;
  bool relaxed_ = false;
  bool sub_algebraic_ = false;
};

}  // namespace acheck::detail
