#include "acheck/r1cs.hpp"

#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "acheck/errors.hpp"
#include "acheck/log.hpp"

namespace acheck {

namespace {

constexpr std::uint8_t kMagic[4] = {0x72, 0x31, 0x63, 0x73};  // "r1cs"
constexpr std::uint32_t kHeaderSection = 1;
constexpr std::uint32_t kConstraintSection = 2;
constexpr std::uint32_t kWireToLabelSection = 3;

class Reader {
 public:
  Reader(std::span<const std::uint8_t> bytes, std::size_t begin, std::size_t end)
      : bytes_(bytes), pos_(begin), end_(end) {}

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return end_ - pos_; }

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    if (remaining() < n) throw FormatError(std::string("truncated ") + what, pos_);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::uint32_t u32(const char* what) {
    auto s = take(4, what);
    return std::uint32_t(s[0]) | std::uint32_t(s[1]) << 8 | std::uint32_t(s[2]) << 16 | std::uint32_t(s[3]) << 24;
  }

  std::uint64_t u64(const char* what) {
    std::uint64_t lo = u32(what);
    std::uint64_t hi = u32(what);
    return lo | hi << 32;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_;
  std::size_t end_;
};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

struct Section {
  std::uint32_t type;
  std::size_t begin;
  std::size_t size;
};

LinearCombination read_lc(Reader& r, const R1csFile& f) {
  std::uint32_t nnz = r.u32("linear combination size");
  LinearCombination lc;
  lc.reserve(std::min<std::uint32_t>(nnz, 1u << 16));
  for (std::uint32_t i = 0; i < nnz; ++i) {
    std::size_t at = r.pos();
    std::uint32_t wire = r.u32("wire id");
    if (wire >= f.n_wires) {
      throw FormatError("wire id " + std::to_string(wire) + " out of range (" + std::to_string(f.n_wires) + " wires)", at);
    }
    auto bytes = r.take(f.field_size_bytes, "coefficient");
    lc.push_back({wire, parse_le_bytes(bytes, f.prime)});
  }
  return lc;
}

void write_lc(std::vector<std::uint8_t>& out, const LinearCombination& lc, std::uint32_t width) {
  put_u32(out, static_cast<std::uint32_t>(lc.size()));
  for (const auto& t : lc) {
    put_u32(out, t.wire);
    auto b = mpz_to_le_bytes(t.coeff.value(), width);
    out.insert(out.end(), b.begin(), b.end());
  }
}

}  // namespace

R1csFile parse_r1cs(std::span<const std::uint8_t> bytes) {
  Reader top(bytes, 0, bytes.size());
  auto magic = top.take(4, "magic");
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) throw FormatError("bad magic, expected \"r1cs\"", 0);
  std::uint32_t version = top.u32("version");
  if (version != 1) throw FormatError("unsupported r1cs version " + std::to_string(version), 4);
  std::uint32_t n_sections = top.u32("section count");

  std::vector<Section> sections;
  for (std::uint32_t i = 0; i < n_sections; ++i) {
    std::uint32_t type = top.u32("section type");
    std::uint64_t size = top.u64("section size");
    std::size_t begin = top.pos();
    if (size > top.remaining()) throw FormatError("truncated section " + std::to_string(type), begin);
    sections.push_back({type, begin, static_cast<std::size_t>(size)});
    top.take(static_cast<std::size_t>(size), "section body");
  }

  R1csFile f;
  const Section* header = nullptr;
  const Section* constraints = nullptr;
  const Section* labels = nullptr;
  for (const auto& s : sections) {
    const Section** slot = nullptr;
    if (s.type == kHeaderSection) slot = &header;
    if (s.type == kConstraintSection) slot = &constraints;
    if (s.type == kWireToLabelSection) slot = &labels;
    if (!slot) continue;  // unknown sections are skipped by size
    if (*slot) throw FormatError("duplicate section " + std::to_string(s.type), s.begin);
    *slot = &s;
  }
  if (!header) throw FormatError("missing header section", bytes.size());

  Reader h(bytes, header->begin, header->begin + header->size);
  f.field_size_bytes = h.u32("field size");
  if (f.field_size_bytes == 0 || f.field_size_bytes % 8 != 0) {
    throw FormatError("field size must be a positive multiple of 8, got " + std::to_string(f.field_size_bytes),
                      header->begin);
  }
  std::size_t prime_at = h.pos();
  mpz_class prime = le_bytes_to_mpz(h.take(f.field_size_bytes, "prime"));
  try {
    f.prime = Prime(prime);
  } catch (const UsageError& e) {
    throw FormatError(e.what(), prime_at);
  }
  f.n_wires = h.u32("wire count");
  f.n_pub_out = h.u32("public output count");
  f.n_pub_in = h.u32("public input count");
  f.n_prv_in = h.u32("private input count");
  f.n_labels = h.u64("label count");
  std::uint32_t n_constraints = h.u32("constraint count");
  if (f.n_wires == 0) throw FormatError("header declares zero wires", header->begin);

  if (constraints) {
    Reader c(bytes, constraints->begin, constraints->begin + constraints->size);
    for (std::uint32_t i = 0; i < n_constraints; ++i) {
      R1csConstraint rc;
      rc.a = read_lc(c, f);
      rc.b = read_lc(c, f);
      rc.c = read_lc(c, f);
      f.constraints.push_back(std::move(rc));
    }
    if (c.remaining() != 0) throw FormatError("constraint section longer than declared constraint count", c.pos());
  } else if (n_constraints != 0) {
    throw FormatError("missing constraint section", bytes.size());
  }

  if (labels) {
    Reader l(bytes, labels->begin, labels->begin + labels->size);
    for (std::uint32_t i = 0; i < f.n_wires; ++i) f.wire_to_label.push_back(l.u64("wire label"));
    if (l.remaining() != 0) throw FormatError("wire-to-label section has trailing bytes", l.pos());
  }
  return f;
}

std::vector<std::uint8_t> write_r1cs(const R1csFile& f) {
  std::vector<std::uint8_t> header;
  put_u32(header, f.field_size_bytes);
  auto p = mpz_to_le_bytes(f.prime.value(), f.field_size_bytes);
  header.insert(header.end(), p.begin(), p.end());
  put_u32(header, f.n_wires);
  put_u32(header, f.n_pub_out);
  put_u32(header, f.n_pub_in);
  put_u32(header, f.n_prv_in);
  put_u64(header, f.n_labels);
  put_u32(header, static_cast<std::uint32_t>(f.constraints.size()));

  std::vector<std::uint8_t> body;
  for (const auto& c : f.constraints) {
    write_lc(body, c.a, f.field_size_bytes);
    write_lc(body, c.b, f.field_size_bytes);
    write_lc(body, c.c, f.field_size_bytes);
  }

  std::vector<std::uint8_t> labels;
  for (auto l : f.wire_to_label) put_u64(labels, l);

  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_u32(out, 1);
  put_u32(out, f.wire_to_label.empty() ? 2 : 3);
  auto section = [&](std::uint32_t type, const std::vector<std::uint8_t>& payload) {
    put_u32(out, type);
    put_u64(out, payload.size());
    out.insert(out.end(), payload.begin(), payload.end());
  };
  section(kHeaderSection, header);
  section(kConstraintSection, body);
  if (!f.wire_to_label.empty()) section(kWireToLabelSection, labels);
  return out;
}

SymTable parse_sym(const std::string& text) {
  SymTable table;
  std::istringstream in(text);
  std::string line;
  std::uint64_t lineno = 0;
  std::set<std::string> names;
  auto parse_int = [&](const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw FormatError("sym: non-integer field '" + s + "'", lineno);
    }
    if (used != s.size()) throw FormatError("sym: non-integer field '" + s + "'", lineno);
    return static_cast<std::int64_t>(v);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
      auto comma = line.find(',', start);
      if (comma == std::string::npos) break;
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    fields.push_back(line.substr(start));
    if (fields.size() != 4 || fields[3].empty()) {
      throw FormatError("sym: expected 4 comma-separated fields, got " + std::to_string(fields.size()), lineno);
    }
    SymRow row{parse_int(fields[0]), parse_int(fields[1]), parse_int(fields[2]), fields[3]};
    if (!names.insert(row.name).second) throw FormatError("sym: duplicate signal name '" + row.name + "'", lineno);
    table.push_back(std::move(row));
  }
  return table;
}

ConstraintSystem lower_r1cs(const R1csFile& r1cs, const SymTable& sym, const LoweringOptions& opts) {
  const Prime& p = r1cs.prime;
  VariablePartition part = partition_variables(r1cs.metadata());

  std::map<std::uint32_t, std::string> wire_names;
  for (const auto& row : sym) {
    if (row.wire < 0) continue;  // optimized out
    if (row.wire >= static_cast<std::int64_t>(r1cs.n_wires)) {
      throw FormatError("sym: wire " + std::to_string(row.wire) + " not present in r1cs");
    }
    wire_names.try_emplace(static_cast<std::uint32_t>(row.wire), row.name);
  }

  std::vector<VarKind> kind(r1cs.n_wires, VarKind::Temp);
  for (auto w : part.known) kind[w] = VarKind::Known;
  for (auto w : part.output) kind[w] = VarKind::Output;

  if (opts.output_names) {
    std::map<std::string, std::uint32_t> by_name;
    for (const auto& [w, n] : wire_names) {
      by_name.emplace(n, w);
      if (n.rfind("main.", 0) == 0) by_name.emplace(n.substr(5), w);
    }
    for (auto w : part.output) kind[w] = VarKind::Temp;
    for (const auto& n : *opts.output_names) {
      auto it = by_name.find(n);
      if (it == by_name.end()) throw UsageError("output filter names unknown signal '" + n + "'");
      if (kind[it->second] == VarKind::Known) throw UsageError("signal '" + n + "' is an input, not an output");
      kind[it->second] = VarKind::Output;
    }
  }

  std::vector<bool> used(r1cs.n_wires, false);
  for (auto w : part.output) used[w] = true;
  for (auto w : part.known) used[w] = true;
  for (const auto& c : r1cs.constraints) {
    for (const auto* lc : {&c.a, &c.b, &c.c}) {
      for (const auto& t : *lc) used[t.wire] = true;
    }
  }
  if (opts.output_names) {
    for (std::uint32_t w = 1; w < r1cs.n_wires; ++w) {
      if (kind[w] == VarKind::Output) used[w] = true;
    }
  }

  ConstraintSystem sys(p);
  std::vector<std::optional<VarId>> var_of(r1cs.n_wires);
  for (std::uint32_t w = 1; w < r1cs.n_wires; ++w) {
    if (!used[w]) continue;
    auto it = wire_names.find(w);
    std::string name;
    if (it != wire_names.end()) {
      name = it->second;
    } else {
      name = "w" + std::to_string(w);
      if (kind[w] == VarKind::Temp) log::warn("r1cs: wire " + std::to_string(w) + " has no name; treated as temp");
    }
    var_of[w] = sys.add_variable(name, kind[w]);
  }

  auto to_poly = [&](const LinearCombination& lc) {
    Polynomial poly(p);
    for (const auto& t : lc) {
      if (t.wire == 0) {
        poly.add_term(Monomial(), t.coeff);
      } else {
        poly.add_term(Monomial::of(*var_of[t.wire]), t.coeff);
      }
    }
    return poly;
  };

  log::info(std::string("r1cs: reading rows as A*B ") + (opts.c_sign == CSign::Neg ? "- C" : "+ C") + " = 0");
  for (const auto& c : r1cs.constraints) {
    Polynomial a = to_poly(c.a);
    Polynomial b = to_poly(c.b);
    Polynomial cc = to_poly(c.c);
    Polynomial row = a * b;
    if (opts.c_sign == CSign::Neg) {
      row -= cc;
    } else {
      row += cc;
    }
    sys.add_constraint(std::move(row));
  }
  return sys;
}

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace acheck
