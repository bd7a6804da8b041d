#include "acheck/circuit.hpp"

#include <algorithm>
#include <sstream>

#include "acheck/errors.hpp"

namespace acheck {

VarId ConstraintSystem::add_variable(const std::string& name, VarKind kind) {
  if (by_name_.count(name)) throw UsageError("duplicate variable '" + name + "'");
  VarId id{static_cast<std::uint32_t>(variables_.size()), kind};
  variables_.push_back({id, name});
  by_name_.emplace(name, id.index);
  return id;
}

void ConstraintSystem::add_constraint(Polynomial p) {
  if (!(p.prime() == prime_)) throw UsageError("constraint modulus differs from the system's");
  constraints_.push_back(std::move(p));
}

void ConstraintSystem::set_constraints(std::vector<Polynomial> ps) {
  constraints_.clear();
  for (auto& p : ps) add_constraint(std::move(p));
}

std::optional<VarId> ConstraintSystem::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return variables_[it->second].id;
}

std::function<std::string(VarId)> ConstraintSystem::namer() const {
  return [this](VarId v) { return v.index < variables_.size() ? variables_[v.index].name : default_var_name(v); };
}

std::vector<VarId> ConstraintSystem::of_kinds(KindMask kinds) const {
  std::vector<VarId> out;
  for (const auto& v : variables_) {
    if (kind_bit(v.id.kind) & kinds) out.push_back(v.id);
  }
  return out;
}

ConstraintSystem ConstraintSystem::with_kinds(const std::map<std::uint32_t, VarKind>& kinds) const {
  ConstraintSystem out(prime_);
  for (const auto& v : variables_) {
    auto it = kinds.find(v.id.index);
    out.add_variable(v.name, it == kinds.end() ? v.id.kind : it->second);
  }
  for (const auto& p : constraints_) {
    Polynomial q(prime_);
    for (const auto& [m, c] : p.terms()) {
      std::vector<Monomial::Factor> fs;
      for (const auto& [var, e] : m.factors()) fs.push_back({out.variables_[var.index].id, e});
      q.add_term(Monomial::from_factors(std::move(fs)), c);
    }
    out.add_constraint(std::move(q));
  }
  return out;
}

ConstraintSystem ConstraintSystem::substituted(const Binding& b) const {
  ConstraintSystem out = *this;
  out.constraints_.clear();
  for (const auto& p : constraints_) {
    Polynomial q = p.substitute(b);
    if (!q.is_zero()) out.constraints_.push_back(std::move(q));
  }
  return out;
}

ConstraintSystem ConstraintSystem::substituted(const std::map<std::uint32_t, Polynomial>& r) const {
  ConstraintSystem out = *this;
  out.constraints_.clear();
  for (const auto& p : constraints_) {
    Polynomial q = p.substitute(r);
    if (!q.is_zero()) out.constraints_.push_back(std::move(q));
  }
  return out;
}

std::string ConstraintSystem::to_string() const {
  std::ostringstream os;
  auto name = namer();
  for (const auto& p : constraints_) os << p.to_string(name) << " = 0\n";
  return os.str();
}

const char* to_string(ConstraintClass c) {
  switch (c) {
    case ConstraintClass::PreciselyLinear: return "precisely-linear";
    case ConstraintClass::KCoefficientLinear: return "k-coefficient-linear";
    case ConstraintClass::HigherOrder: return "higher-order";
  }
  return "?";
}

const char* to_string(CircuitClass c) {
  switch (c) {
    case CircuitClass::PreciselyLinear: return "precisely-linear";
    case CircuitClass::KCoefficient: return "k-coefficient";
    case CircuitClass::HigherOrder: return "higher-order";
  }
  return "?";
}

ConstraintClass classify_constraint(const Polynomial& p) {
  if (p.degree_in(kUnknownKinds) >= 2) return ConstraintClass::HigherOrder;
  for (const auto& [m, coeff] : p.collect_by_unknowns()) {
    if (!m.is_one() && !coeff.is_constant()) return ConstraintClass::KCoefficientLinear;
  }
  return ConstraintClass::PreciselyLinear;
}

CircuitClass classify_circuit(const ConstraintSystem& sys) {
  if (sys.constraints().empty()) throw UsageError("cannot classify an empty constraint system");
  bool k_coeff = false;
  for (const auto& p : sys.constraints()) {
    switch (classify_constraint(p)) {
      case ConstraintClass::HigherOrder: return CircuitClass::HigherOrder;
      case ConstraintClass::KCoefficientLinear: k_coeff = true; break;
      case ConstraintClass::PreciselyLinear: break;
    }
  }
  return k_coeff ? CircuitClass::KCoefficient : CircuitClass::PreciselyLinear;
}

namespace {

// Rewrites m replacing every v^2 by aux (v^e -> aux^(e/2) * v^(e%2)).
Monomial replace_square(const Monomial& m, VarId v, VarId aux) {
  std::vector<Monomial::Factor> fs;
  for (const auto& [var, e] : m.factors()) {
    if (var == v) {
      if (e / 2) fs.push_back({aux, e / 2});
      if (e % 2) fs.push_back({var, 1});
    } else {
      fs.push_back({var, e});
    }
  }
  return Monomial::from_factors(std::move(fs));
}

Monomial replace_pair(const Monomial& m, VarId a, VarId b, VarId aux) {
  std::vector<Monomial::Factor> fs;
  for (const auto& [var, e] : m.factors()) {
    if (var == a || var == b) {
      if (e > 1) fs.push_back({var, e - 1});
    } else {
      fs.push_back({var, e});
    }
  }
  fs.push_back({aux, 1});
  return Monomial::from_factors(std::move(fs));
}

}  // namespace

ConstraintSystem reduce_degree(const ConstraintSystem& sys, int max_rounds) {
  ConstraintSystem out = sys;
  std::vector<Polynomial> polys = sys.constraints();
  std::vector<Polynomial> definitions;
  std::map<std::pair<std::uint32_t, std::uint32_t>, VarId> cache;
  const Prime& p = sys.prime();
  int rounds = 0;
  std::uint32_t aux_counter = 0;

  auto fresh_aux = [&]() {
    for (;;) {
      std::string name = "__aux" + std::to_string(aux_counter++);
      if (!out.find(name)) return out.add_variable(name, VarKind::Aux);
    }
  };

  for (;;) {
    std::optional<Monomial> target;
    std::uint32_t best = 2;
    for (const auto& poly : polys) {
      for (const auto& [m, c] : poly.terms()) {
        std::uint32_t d = m.degree_in(kUnknownKinds);
        if (d > best || (d == best && d > 2 && target && m < *target)) {
          best = d;
          target = m;
        }
      }
    }
    if (!target) break;
    if (++rounds > max_rounds) throw FormatError("degree reduction exceeded " + std::to_string(max_rounds) + " rounds");

    auto [unknown_part, known_part] = target->split(kUnknownKinds);
    std::optional<VarId> square;
    for (const auto& [v, e] : unknown_part.factors()) {
      if (e >= 2) {
        square = v;
        break;
      }
    }
    std::function<Monomial(const Monomial&)> rewrite;
    if (square) {
      VarId v = *square;
      auto key = std::make_pair(v.index, v.index);
      auto it = cache.find(key);
      if (it == cache.end()) {
        VarId aux = fresh_aux();
        it = cache.emplace(key, aux).first;
        definitions.push_back(Polynomial::term(Monomial::of(v, 2), FieldElement(p, 1)) - out.var(aux));
      }
      VarId aux = it->second;
      rewrite = [v, aux](const Monomial& m) {
        return (m.degree_in(kUnknownKinds) > 2 && m.exponent(v.index) >= 2) ? replace_square(m, v, aux) : m;
      };
    } else {
      VarId a = unknown_part.factors()[0].first;
      VarId b = unknown_part.factors()[1].first;
      auto key = std::make_pair(a.index, b.index);
      auto it = cache.find(key);
      if (it == cache.end()) {
        VarId aux = fresh_aux();
        it = cache.emplace(key, aux).first;
        definitions.push_back(Polynomial::term(Monomial::of(a) * Monomial::of(b), FieldElement(p, 1)) - out.var(aux));
      }
      VarId aux = it->second;
      rewrite = [a, b, aux](const Monomial& m) {
        return (m.degree_in(kUnknownKinds) > 2 && m.contains(a.index) && m.contains(b.index)) ? replace_pair(m, a, b, aux)
                                                                                            : m;
      };
    }
    for (auto& poly : polys) {
      Polynomial q(p);
      for (const auto& [m, c] : poly.terms()) q.add_term(rewrite(m), c);
      poly = std::move(q);
    }
    for (auto& def : definitions) {
      Polynomial q(p);
      for (const auto& [m, c] : def.terms()) q.add_term(rewrite(m), c);
      def = std::move(q);
    }
  }
  for (auto& d : definitions) polys.push_back(std::move(d));
  out.set_constraints(std::move(polys));
  return out;
}

VariablePartition partition_variables(const WireMetadata& meta) {
  std::uint64_t declared = 1ull + meta.n_pub_out + meta.n_pub_in + meta.n_prv_in;
  if (meta.n_wires == 0 || declared > meta.n_wires) {
    throw FormatError("wire declarations overlap: " + std::to_string(declared) + " declared wires but only " +
                      std::to_string(meta.n_wires) + " exist");
  }
  VariablePartition part;
  std::uint32_t w = 1;
  for (std::uint32_t i = 0; i < meta.n_pub_out; ++i) part.output.push_back(w++);
  for (std::uint32_t i = 0; i < meta.n_pub_in + meta.n_prv_in; ++i) part.known.push_back(w++);
  for (; w < meta.n_wires; ++w) part.temp.push_back(w);
  return part;
}

}  // namespace acheck
