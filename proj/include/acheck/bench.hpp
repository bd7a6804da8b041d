#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acheck/circuit.hpp"
#include "acheck/r1cs.hpp"
#include "acheck/verdict.hpp"

namespace acheck {

inline constexpr const char* kToolVersion = "0.1.0";

struct LoadOptions {
  std::optional<Prime> prime;            // overrides the file's modulus
  std::optional<std::string> sym_path;   // default: <stem>.sym next to an .r1cs
  LoweringOptions lowering;
};

// Loads a .polyir file, or an .r1cs file with its symbol table.
ConstraintSystem load_circuit(const std::string& path, const LoadOptions& opts = {});

// "small" below 100 constraints, "medium" below 1000, "large" otherwise.
std::string size_class(std::size_t constraints);

struct BenchRow {
  std::string name;
  std::size_t constraints = 0;
  Verdict verdict;
  std::optional<std::string> error;  // load failure; the row counts as unsolved
};

struct BenchAggregates {
  std::size_t total = 0;
  std::size_t ps = 0;  // precise verdicts
  std::size_t as = 0;  // precise or algebraic verdicts
  std::optional<double> ps_rate, as_rate;
  std::optional<double> avg_ps_seconds, avg_as_seconds;
  std::map<std::string, std::size_t> by_size;
  std::map<std::string, std::size_t> by_category;
};

struct BenchmarkReport {
  CheckConfig config;
  std::vector<BenchRow> rows;
  BenchAggregates aggregates;
};

BenchAggregates aggregate(const std::vector<BenchRow>& rows);

struct BenchOptions {
  CheckConfig config;
  unsigned workers = 1;
  LoadOptions load;
};

// Non-empty, non-comment lines; relative paths resolve against the manifest's directory.
std::vector<std::string> read_manifest(const std::string& path);

BenchmarkReport run_benchmark(const std::vector<std::string>& paths, const BenchOptions& opts);

nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const BenchmarkReport& r);
std::string to_text(const BenchmarkReport& r);

}  // namespace acheck
