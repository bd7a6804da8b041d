#include "acheck/bench.hpp"

#include <atomic>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <thread>

#include "acheck/check.hpp"
#include "acheck/errors.hpp"
#include "acheck/log.hpp"
#include "acheck/polyir.hpp"

namespace acheck {

namespace fs = std::filesystem;

ConstraintSystem load_circuit(const std::string& path, const LoadOptions& opts) {
  fs::path p(path);
  if (p.extension() == ".polyir") return parse_polyir(read_text_file(path), opts.prime);
  if (p.extension() != ".r1cs") throw UsageError("unsupported circuit file: " + path);
  auto bytes = read_binary_file(path);
  R1csFile file = parse_r1cs(bytes);
  if (opts.prime && !(*opts.prime == file.prime)) {
    log::warn("overriding the R1CS modulus with " + opts.prime->to_string());
    file.prime = *opts.prime;
    for (auto& c : file.constraints) {
      for (auto* lc : {&c.a, &c.b, &c.c}) {
        for (auto& t : *lc) t.coeff = FieldElement(file.prime, t.coeff.value());
      }
    }
  }
  SymTable sym;
  fs::path sym_path = opts.sym_path ? fs::path(*opts.sym_path) : fs::path(p).replace_extension(".sym");
  if (fs::exists(sym_path)) {
    sym = parse_sym(read_text_file(sym_path.string()));
  } else if (opts.sym_path) {
    throw UsageError("symbol file not found: " + sym_path.string());
  }
  return lower_r1cs(file, sym, opts.lowering);
}

std::string size_class(std::size_t constraints) {
  if (constraints < 100) return "small";
  if (constraints < 1000) return "medium";
  return "large";
}

std::vector<std::string> read_manifest(const std::string& path) {
  std::istringstream in(read_text_file(path));
  fs::path base = fs::path(path).parent_path();
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    fs::path entry(line.substr(b, e - b + 1));
    out.push_back(entry.is_absolute() ? entry.string() : (base / entry).string());
  }
  return out;
}

BenchAggregates aggregate(const std::vector<BenchRow>& rows) {
  BenchAggregates a;
  double ps_time = 0, as_time = 0;
  for (const auto& r : rows) {
    ++a.total;
    if (r.error) {
      ++a.by_category["error"];
      continue;
    }
    ++a.by_size[size_class(r.constraints)];
    ++a.by_category[to_string(r.verdict.category)];
    if (r.verdict.category == Category::Unknown) continue;
    ++a.as;
    as_time += r.verdict.seconds;
    if (is_precise(r.verdict.category)) {
      ++a.ps;
      ps_time += r.verdict.seconds;
    }
  }
  if (a.total) {
    a.ps_rate = double(a.ps) / a.total;
    a.as_rate = double(a.as) / a.total;
  }
  if (a.ps) a.avg_ps_seconds = ps_time / a.ps;
  if (a.as) a.avg_as_seconds = as_time / a.as;
  return a;
}

BenchmarkReport run_benchmark(const std::vector<std::string>& paths, const BenchOptions& opts) {
  BenchmarkReport report;
  report.config = opts.config;
  report.rows.resize(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < paths.size(); i = next++) {
      BenchRow row;
      row.name = fs::path(paths[i]).filename().string();
      try {
        ConstraintSystem sys = load_circuit(paths[i], opts.load);
        row.constraints = sys.constraints().size();
        row.verdict = check(sys, opts.config);
      } catch (const std::exception& e) {
        row.error = e.what();
        log::warn(paths[i] + ": " + e.what());
      }
      report.rows[i] = std::move(row);  // each slot written by one worker
    }
  };
  unsigned n = std::max(1u, opts.workers);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  report.aggregates = aggregate(report.rows);
  return report;
}

namespace {

nlohmann::json named(const NamedValues& vals) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : vals) j[k] = v;
  return j;
}

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json("n/a"); }

}  // namespace

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json ev;
  ev["inputs"] = named(v.evidence.inputs);
  ev["free_outputs"] = v.evidence.free_outputs;
  ev["output_witnesses"] = nlohmann::json::array();
  for (const auto& w : v.evidence.output_witnesses) ev["output_witnesses"].push_back(named(w));
  ev["notes"] = v.evidence.notes;
  nlohmann::json j;
  j["class"] = v.circuit_class ? to_string(*v.circuit_class) : "none";
  j["category"] = to_string(v.category);
  j["evidence"] = ev;
  j["ledger"] = v.ledger;
  j["seconds"] = v.seconds;
  if (v.category == Category::Unknown) {
    j["reason"] = to_string(v.reason);
    j["reason_detail"] = v.reason_detail;
  }
  return j;
}

nlohmann::json to_json(const BenchmarkReport& r) {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["config"] = {{"timeout_seconds", r.config.timeout_seconds},
                 {"memory_cap_bytes", r.config.memory_cap_bytes},
                 {"max_candidates", r.config.max_candidates},
                 {"enumeration_prime_bound", r.config.enumeration_prime_bound},
                 {"enumeration_unknown_bound", r.config.enumeration_unknown_bound},
                 {"enumeration_branch_cap", r.config.enumeration_branch_cap}};
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json x;
    if (row.error) {
      x = {{"name", row.name}, {"class", "none"}, {"category", "error"}, {"error", *row.error},
           {"evidence", nlohmann::json::object()}, {"ledger", nlohmann::json::array()}, {"seconds", 0}};
    } else {
      x = to_json(row.verdict);
      x["name"] = row.name;
      x["constraints"] = row.constraints;
      x["size"] = size_class(row.constraints);
    }
    j["rows"].push_back(x);
  }
  const auto& a = r.aggregates;
  j["aggregates"] = {{"total", a.total},
                     {"ps", a.ps},
                     {"as", a.as},
                     {"ps_rate", opt(a.ps_rate)},
                     {"as_rate", opt(a.as_rate)},
                     {"avg_ps_seconds", opt(a.avg_ps_seconds)},
                     {"avg_as_seconds", opt(a.avg_as_seconds)},
                     {"by_size", a.by_size},
                     {"by_category", a.by_category}};
  return j;
}

std::string to_text(const BenchmarkReport& r) {
  std::ostringstream out;
  out << std::left << std::setw(32) << "circuit" << std::setw(16) << "class" << std::setw(30) << "category"
      << "seconds\n";
  for (const auto& row : r.rows) {
    out << std::setw(32) << row.name;
    if (row.error) {
      out << std::setw(16) << "-" << std::setw(30) << "error" << "- (" << *row.error << ")\n";
      continue;
    }
    out << std::setw(16) << (row.verdict.circuit_class ? to_string(*row.verdict.circuit_class) : "none")
        << std::setw(30) << to_string(row.verdict.category) << std::fixed << std::setprecision(3)
        << row.verdict.seconds << "\n";
  }
  auto rate = [](const std::optional<double>& v) {
    if (!v) return std::string("n/a");
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << *v;
    return s.str();
  };
  const auto& a = r.aggregates;
  out << "total " << a.total << "  ps " << a.ps << "  as " << a.as << "  ps_rate " << rate(a.ps_rate) << "  as_rate "
      << rate(a.as_rate) << "  avg_ps_s " << rate(a.avg_ps_seconds) << "  avg_as_s " << rate(a.avg_as_seconds)
      << "\n";
  return out.str();
}

}  // namespace acheck
