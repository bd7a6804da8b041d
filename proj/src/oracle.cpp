#include "acheck/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace acheck {

namespace {

// A constraint compiled to machine words: sum of coeff * prod(slot^exp).
struct WordPoly {
  std::vector<std::pair<std::uint64_t, std::vector<std::pair<std::size_t, std::uint32_t>>>> terms;
};

std::uint64_t powmod(std::uint64_t b, std::uint32_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

}  // namespace

std::optional<OracleResult> oracle(const ConstraintSystem& sys, std::uint64_t max_points) {
  const Prime& prime = sys.prime();
  if (!prime.is_small() || prime.small_value() >= (std::uint64_t(1) << 32)) return std::nullopt;
  const std::uint64_t p = prime.small_value();

  std::set<std::uint32_t> used;
  for (const auto& c : sys.constraints()) {
    for (VarId v : c.variables()) used.insert(v.index);
  }
  std::vector<std::uint32_t> known, unknown;
  for (std::uint32_t i : used) (sys.variable(i).id.kind == VarKind::Known ? known : unknown).push_back(i);
  std::vector<std::size_t> output_slots;
  bool free_output = false;
  for (VarId o : sys.outputs()) {
    if (!used.count(o.index)) free_output = true;
  }

  std::uint64_t points = 1;
  for (std::size_t i = 0; i < known.size() + unknown.size(); ++i) {
    if (points > max_points / p) return std::nullopt;
    points *= p;
  }
  if (points > max_points) return std::nullopt;

  // slots: known first, then unknowns
  std::map<std::uint32_t, std::size_t> slot;
  for (std::uint32_t i : known) slot.emplace(i, slot.size());
  for (std::uint32_t i : unknown) slot.emplace(i, slot.size());
  for (std::uint32_t i : unknown) {
    if (sys.variable(i).id.kind == VarKind::Output) output_slots.push_back(slot.at(i));
  }
  std::vector<WordPoly> polys;
  for (const auto& c : sys.constraints()) {
    WordPoly w;
    for (const auto& [m, coeff] : c.terms()) {
      std::vector<std::pair<std::size_t, std::uint32_t>> f;
      for (const auto& [v, e] : m.factors()) f.emplace_back(slot.at(v.index), e);
      w.terms.emplace_back(coeff.value().get_ui(), std::move(f));
    }
    polys.push_back(std::move(w));
  }

  OracleResult res;
  res.points = points;
  std::vector<std::uint64_t> values(slot.size(), 0);
  auto satisfied = [&] {
    for (const auto& w : polys) {
      std::uint64_t acc = 0;
      for (const auto& [coeff, f] : w.terms) {
        std::uint64_t t = coeff;
        for (const auto& [s, e] : f) t = t * powmod(values[s], e, p) % p;
        acc = (acc + t) % p;
      }
      if (acc != 0) return false;
    }
    return true;
  };
  // odometer over a slot range
  auto advance = [&](std::size_t from, std::size_t to) {
    for (std::size_t s = from; s < to; ++s) {
      if (++values[s] < p) return true;
      values[s] = 0;
    }
    return false;
  };

  bool any_under = false, any_over = false;
  do {
    std::fill(values.begin() + known.size(), values.end(), 0);
    std::optional<std::vector<std::uint64_t>> first;
    Truth label = Truth::Over;
    do {
      if (!satisfied()) continue;
      std::vector<std::uint64_t> proj;
      for (std::size_t s : output_slots) proj.push_back(values[s]);
      if (!first) {
        first = proj;
        label = free_output ? Truth::Under : Truth::Exact;
        if (free_output) break;
      } else if (proj != *first) {
        label = Truth::Under;
        break;
      }
    } while (advance(known.size(), values.size()));
    Binding b;
    for (std::size_t k = 0; k < known.size(); ++k) b.emplace(known[k], FieldElement(prime, static_cast<long>(values[k])));
    res.per_input.emplace_back(std::move(b), label);
    any_under |= label == Truth::Under;
    any_over |= label == Truth::Over;
  } while (advance(0, known.size()));
  res.aggregate = any_under ? Truth::Under : any_over ? Truth::Over : Truth::Exact;
  return res;
}

}  // namespace acheck
