#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "acheck/bench.hpp"
#include "acheck/check.hpp"
#include "acheck/errors.hpp"
#include "acheck/oracle.hpp"

using namespace acheck;

namespace {

int exit_code(const std::vector<Category>& cats) {
  bool under = false, over = false, all_exact = true;
  for (Category c : cats) {
    under |= c == Category::PreciselyUnderconstrained;
    over |= c == Category::PreciselyOverconstrained;
    all_exact &= c == Category::PreciselyExactConstrained;
  }
  if (under) return 2;
  if (over) return 3;
  if (all_exact) return 0;
  return 4;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  return out;
}

// Makes exactly the named variables outputs; former outputs become temporaries.
ConstraintSystem rescope_outputs(const ConstraintSystem& sys, const std::vector<std::string>& names) {
  std::map<std::uint32_t, VarKind> kinds;
  for (VarId o : sys.outputs()) kinds[o.index] = VarKind::Temp;
  for (const auto& n : names) {
    auto v = sys.find(n);
    if (!v) v = sys.find("main." + n);
    if (!v) throw UsageError("unknown output name: " + n);
    if (v->kind == VarKind::Known) throw UsageError("input cannot be an output: " + n);
    kinds[v->index] = VarKind::Output;
  }
  return sys.with_kinds(kinds);
}

void print_verdict(const std::string& name, const Verdict& v) {
  std::cout << name << ": " << to_string(v.category);
  if (v.circuit_class) std::cout << " (" << to_string(*v.circuit_class) << ")";
  std::cout << "\n";
  for (const auto& [k, val] : v.evidence.inputs) std::cout << "  input " << k << " = " << val << "\n";
  for (const auto& o : v.evidence.free_outputs) std::cout << "  free output " << o << "\n";
  for (const auto& w : v.evidence.output_witnesses) {
    std::cout << "  witness";
    for (const auto& [k, val] : w) std::cout << " " << k << "=" << val;
    std::cout << "\n";
  }
  for (const auto& l : v.ledger) std::cout << "  assumed nonzero: " << l << "\n";
  for (const auto& n : v.evidence.notes) std::cout << "  note: " << n << "\n";
  if (v.category == Category::Unknown) std::cout << "  reason: " << to_string(v.reason) << " " << v.reason_detail << "\n";
  std::cout << "  time " << v.seconds << " s\n";
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acheck: classify arithmetic-circuit constraint systems as under-, over- or exactly constrained"};
  app.require_subcommand(1);

  std::string file, sym, prime, outputs, c_sign = "neg", json_out, text_out;
  double timeout = 600;
  unsigned workers = 1;
  std::uint64_t max_points = 1000000;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--prime", prime, "field modulus (decimal)");
    sub->add_option("--outputs", outputs, "comma-separated output signal names");
    sub->add_option("--timeout", timeout, "per-circuit timeout in seconds");
    sub->add_option("--json", json_out, "write a JSON report");
  };
  auto* check_cmd = app.add_subcommand("check", "check an R1CS file");
  check_cmd->add_option("file", file, "circuit.r1cs")->required();
  check_cmd->add_option("--sym", sym, "symbol file (default: alongside the .r1cs)");
  check_cmd->add_option("--r1cs-c-sign", c_sign, "read rows as A*B - C (neg) or A*B + C (pos)")
      ->check(CLI::IsMember({"neg", "pos"}));
  common(check_cmd);
  auto* poly_cmd = app.add_subcommand("check-poly", "check a PolyIR file");
  poly_cmd->add_option("file", file, "circuit.polyir")->required();
  common(poly_cmd);
  auto* bench_cmd = app.add_subcommand("bench", "check every circuit listed in a manifest");
  bench_cmd->add_option("manifest", file, "one circuit path per line")->required();
  bench_cmd->add_option("--workers", workers, "parallel workers");
  bench_cmd->add_option("--text", text_out, "write the plain-text table");
  bench_cmd->add_option("--r1cs-c-sign", c_sign)->check(CLI::IsMember({"neg", "pos"}));
  common(bench_cmd);
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth for small fields");
  oracle_cmd->add_option("file", file)->required();
  oracle_cmd->add_option("--max-points", max_points, "enumeration budget");
  oracle_cmd->add_option("--prime", prime, "field modulus (decimal)");

  CLI11_PARSE(app, argc, argv);

  try {
    LoadOptions load;
    if (!prime.empty()) load.prime = Prime(prime);
    if (!sym.empty()) load.sym_path = sym;
    load.lowering.c_sign = c_sign == "pos" ? CSign::Pos : CSign::Neg;
    CheckConfig cfg;
    cfg.timeout_seconds = timeout;

    if (*bench_cmd) {
      if (!outputs.empty()) load.lowering.output_names = split_names(outputs);
      BenchOptions opts{cfg, workers, load};
      BenchmarkReport report = run_benchmark(read_manifest(file), opts);
      std::string text = to_text(report);
      std::cout << text;
      if (!json_out.empty()) write_json(json_out, to_json(report));
      if (!text_out.empty()) std::ofstream(text_out) << text;
      std::vector<Category> cats;
      for (const auto& r : report.rows) cats.push_back(r.error ? Category::Unknown : r.verdict.category);
      return exit_code(cats);
    }

    if (*check_cmd && !outputs.empty()) load.lowering.output_names = split_names(outputs);
    ConstraintSystem sys = load_circuit(file, load);
    if (*poly_cmd && !outputs.empty()) sys = rescope_outputs(sys, split_names(outputs));

    if (*oracle_cmd) {
      auto res = oracle(sys, max_points);
      if (!res) {
        std::cerr << "oracle: enumeration budget exceeded or field too large\n";
        return 1;
      }
      std::size_t counts[3] = {0, 0, 0};
      for (const auto& [b, t] : res->per_input) ++counts[static_cast<int>(t)];
      std::cout << "oracle: " << to_string(res->aggregate) << " (inputs: " << counts[0] << " under, " << counts[1]
                << " exact, " << counts[2] << " over; " << res->points << " points)\n";
      return 0;
    }

    Verdict v = check(sys, cfg);
    print_verdict(file, v);
    if (!json_out.empty()) {
      nlohmann::json j = to_json(v);
      j["name"] = file;
      j["tool_version"] = kToolVersion;
      write_json(json_out, j);
    }
    return exit_code({v.category});
  } catch (const std::exception& e) {
    std::cerr << "acheck: " << e.what() << "\n";
    return 1;
  }
}
