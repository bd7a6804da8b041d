#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acheck/circuit.hpp"

namespace acheck {

enum class Category {
  PreciselyUnderconstrained,
  PreciselyExactConstrained,
  PreciselyOverconstrained,
  AlgebraicExactConstrained,
  AlgebraicOverconstrained,
  Unknown,
};

const char* to_string(Category c);
std::optional<Category> category_from_string(const std::string& s);
bool is_precise(Category c);

// Ground-truth label of a circuit (or of one known-input assignment).
enum class Truth { Under, Exact, Over };
const char* to_string(Truth t);

// Whether a verdict is compatible with a ground-truth label: precise
// categories must match; algebraic-exact admits under, algebraic-over admits
// exact; unknown admits everything.
bool consistent(Category c, Truth t);

enum class UnknownReason { None, ResourceCap, EnumerationBound, UnsupportedShape, Ambiguous };
const char* to_string(UnknownReason r);

using NamedValues = std::vector<std::pair<std::string, std::string>>;

struct Evidence {
  // Known-input assignment under which the finding holds.
  NamedValues inputs;
  // Outputs left unconstrained under `inputs`.
  std::vector<std::string> free_outputs;
  // Two distinct output tuples satisfying the constraints under `inputs`.
  std::vector<NamedValues> output_witnesses;
  std::vector<std::string> notes;

  bool empty() const { return inputs.empty() && free_outputs.empty() && output_witnesses.empty() && notes.empty(); }
};

struct Verdict {
  Category category = Category::Unknown;
  Evidence evidence;
  // Known-input polynomials assumed nonzero.
  std::vector<std::string> ledger;
  double seconds = 0;
  std::optional<CircuitClass> circuit_class;
  UnknownReason reason = UnknownReason::None;
  std::string reason_detail;
};

struct CheckConfig {
  double timeout_seconds = 600;
  // Documented cap; allocation is not intercepted, basis and branch caps bound memory instead.
  std::uint64_t memory_cap_bytes = 8ull << 30;
  std::size_t max_candidates = 64;
  std::size_t max_rechecks = 256;
  // Variety enumeration: exhaustive value branching is allowed for p up to
  // this bound and at most `enumeration_unknown_bound` unknowns.
  std::uint64_t enumeration_prime_bound = 1u << 16;
  std::size_t enumeration_unknown_bound = 12;
  std::uint64_t enumeration_branch_cap = 1000000;
  // Zero sets of multivariate assumptions are enumerated when p^vars is below this.
  std::uint64_t zero_set_point_bound = 1u << 16;
  std::size_t max_basis_size = 4000;
  std::uint64_t max_pairs = 200000;
  std::size_t max_coefficient_terms = 400;
  std::size_t sample_tries = 64;
};

// Shared state for one top-level check, including nested rechecks.
class CheckContext {
 public:
  explicit CheckContext(const CheckConfig& cfg)
      : cfg_(cfg),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(cfg.timeout_seconds))) {}

  const CheckConfig& config() const { return cfg_; }
  // Throws ResourceExhausted once the deadline has passed.
  void tick() const;
  bool expired() const { return std::chrono::steady_clock::now() > deadline_; }
  // Claims one nested recheck; false once the cap is reached.
  bool claim_recheck();
  int depth = 0;

 private:
  CheckConfig cfg_;
  std::chrono::steady_clock::time_point deadline_;
  std::size_t rechecks_ = 0;
};

NamedValues name_binding(const ConstraintSystem& sys, const Binding& b);

}  // namespace acheck
