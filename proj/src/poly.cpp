#include "acheck/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "acheck/errors.hpp"

namespace acheck {

const char* to_string(VarKind k) {
  switch (k) {
    case VarKind::Known: return "known";
    case VarKind::Temp: return "temp";
    case VarKind::Output: return "output";
    case VarKind::Aux: return "aux";
  }
  return "?";
}

std::string default_var_name(VarId v) { return "v" + std::to_string(v.index); }

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(VarId v, std::uint32_t exp) {
  Monomial m;
  if (exp > 0) m.factors_.push_back({v, exp});
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == v) {
      m.factors_.back().second += e;
    } else {
      m.factors_.push_back({v, e});
    }
  }
  return m;
}

std::uint32_t Monomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint32_t Monomial::degree_in(KindMask kinds) const {
  std::uint32_t d = 0;
  for (const auto& [v, e] : factors_) {
    if (kind_bit(v.kind) & kinds) d += e;
  }
  return d;
}

std::uint32_t Monomial::exponent(std::uint32_t var_index) const {
  for (const auto& [v, e] : factors_) {
    if (v.index == var_index) return e;
  }
  return 0;
}

std::pair<Monomial, Monomial> Monomial::split(KindMask kinds) const {
  Monomial in, out;
  for (const auto& f : factors_) {
    (kind_bit(f.first.kind) & kinds ? in : out).factors_.push_back(f);
  }
  return {in, out};
}

bool Monomial::divides(const Monomial& other) const {
  auto it = other.factors_.begin();
  for (const auto& [v, e] : factors_) {
    while (it != other.factors_.end() && it->first < v) ++it;
    if (it == other.factors_.end() || !(it->first == v) || it->second < e) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial q;
  auto it = divisor.factors_.begin();
  for (const auto& [v, e] : factors_) {
    std::uint32_t sub = 0;
    while (it != divisor.factors_.end() && it->first < v) ++it;
    if (it != divisor.factors_.end() && it->first == v) sub = it->second;
    if (sub > e) throw UsageError("monomial quotient is not exact");
    if (e > sub) q.factors_.push_back({v, e - sub});
  }
  return q;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r;
  auto a = factors_.begin(), b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.push_back({a->first, std::max(a->second, b->second)});
      ++a;
      ++b;
    }
  }
  return r;
}

bool Monomial::coprime(const Monomial& other) const {
  auto a = factors_.begin(), b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      return false;
    }
  }
  return true;
}

Monomial Monomial::without(std::uint32_t var_index) const {
  Monomial r;
  for (const auto& f : factors_) {
    if (f.first.index != var_index) r.factors_.push_back(f);
  }
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto x = a.factors_.begin(), y = b.factors_.begin();
  while (x != a.factors_.end() || y != b.factors_.end()) {
    if (y == b.factors_.end() || (x != a.factors_.end() && x->first < y->first)) {
      r.factors_.push_back(*x++);
    } else if (x == a.factors_.end() || y->first < x->first) {
      r.factors_.push_back(*y++);
    } else {
      r.factors_.push_back({x->first, x->second + y->second});
      ++x;
      ++y;
    }
  }
  return r;
}

std::string Monomial::to_string(const std::function<std::string(VarId)>& name) const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : factors_) {
    if (!s.empty()) s += "*";
    s += name(v);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

// ----------------------------------------------------------- MonomialOrder

MonomialOrder::MonomialOrder(Tag tag, std::vector<std::uint32_t> priority)
    : tag_(tag), priority_(std::move(priority)) {
  for (std::size_t i = 0; i < priority_.size(); ++i) rank_.emplace(priority_[i], i);
}

MonomialOrder MonomialOrder::grevlex(std::vector<std::uint32_t> priority) {
  return MonomialOrder(Tag::GrevLex, std::move(priority));
}

MonomialOrder MonomialOrder::lex(std::vector<std::uint32_t> priority) {
  return MonomialOrder(Tag::Lex, std::move(priority));
}

std::uint64_t MonomialOrder::rank(std::uint32_t var_index) const {
  if (!rank_.empty()) {
    auto it = rank_.find(var_index);
    if (it != rank_.end()) return it->second;
  }
  return priority_.size() + static_cast<std::uint64_t>(var_index);
}

namespace {
using Ranked = std::vector<std::pair<std::uint64_t, std::uint32_t>>;

Ranked ranked(const Monomial& m, const MonomialOrder& order) {
  Ranked r;
  r.reserve(m.factors().size());
  for (const auto& [v, e] : m.factors()) r.push_back({order.rank(v.index), e});
  std::sort(r.begin(), r.end());
  return r;
}
}  // namespace

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (a == b) return std::strong_ordering::equal;
  if (tag_ == Tag::GrevLex) {
    auto da = a.total_degree(), db = b.total_degree();
    if (da != db) return da <=> db;
  }
  Ranked ra = ranked(a, *this), rb = ranked(b, *this);
  if (tag_ == Tag::Lex) {
    std::size_t i = 0, j = 0;
    while (i < ra.size() && j < rb.size()) {
      if (ra[i].first != rb[j].first) {
        // the side holding the higher-ranked variable wins
        return ra[i].first < rb[j].first ? std::strong_ordering::greater : std::strong_ordering::less;
      }
      if (ra[i].second != rb[j].second) return ra[i].second <=> rb[j].second;
      ++i;
      ++j;
    }
    if (i < ra.size()) return std::strong_ordering::greater;
    if (j < rb.size()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }
  // Equal degree: the smaller exponent in the lowest-ranked variable is larger.
  std::size_t i = ra.size(), j = rb.size();
  while (i > 0 && j > 0) {
    const auto& x = ra[i - 1];
    const auto& y = rb[j - 1];
    if (x.first != y.first) {
      return x.first > y.first ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (x.second != y.second) return x.second < y.second ? std::strong_ordering::greater : std::strong_ordering::less;
    --i;
    --j;
  }
  if (i > 0) return std::strong_ordering::greater;
  if (j > 0) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

// -------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(const FieldElement& c) {
  Polynomial p(c.prime());
  p.add_term(Monomial(), c);
  return p;
}

Polynomial Polynomial::variable(const Prime& p, VarId v) {
  return term(Monomial::of(v), FieldElement(p, 1));
}

Polynomial Polynomial::term(const Monomial& m, const FieldElement& c) {
  Polynomial p(c.prime());
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

FieldElement Polynomial::constant_term() const { return coefficient(Monomial()); }

FieldElement Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? FieldElement(prime_) : it->second;
}

void Polynomial::add_term(const Monomial& m, const FieldElement& c) {
  if (!(c.prime() == prime_)) throw UsageError("polynomial terms have different moduli");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  r -= o;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(prime_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (!(prime_ == o.prime_)) throw UsageError("polynomials have different moduli");
  Polynomial r(prime_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Polynomial Polynomial::scaled(const FieldElement& c) const {
  Polynomial r(prime_);
  if (c.is_zero()) return r;
  for (const auto& [m, a] : terms_) r.terms_.emplace(m, a * c);
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& mono, const FieldElement& c) const {
  Polynomial r(prime_);
  if (c.is_zero()) return r;
  for (const auto& [m, a] : terms_) r.terms_.emplace(m * mono, a * c);
  return r;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial result = constant(prime_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::uint32_t Polynomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.total_degree());
  return d;
}

std::uint32_t Polynomial::degree_in(KindMask kinds) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.degree_in(kinds));
  return d;
}

std::vector<VarId> Polynomial::variables() const {
  std::set<VarId> vs;
  for (const auto& t : terms_) {
    for (const auto& f : t.first.factors()) vs.insert(f.first);
  }
  return {vs.begin(), vs.end()};
}

bool Polynomial::only_kinds(KindMask kinds) const {
  for (const auto& t : terms_) {
    for (const auto& f : t.first.factors()) {
      if (!(kind_bit(f.first.kind) & kinds)) return false;
    }
  }
  return true;
}

bool Polynomial::contains(std::uint32_t var_index) const {
  for (const auto& t : terms_) {
    if (t.first.contains(var_index)) return true;
  }
  return false;
}

std::map<Monomial, Polynomial> Polynomial::collect_by_unknowns() const {
  std::map<Monomial, Polynomial> out;
  for (const auto& [m, c] : terms_) {
    auto [unknown_part, known_part] = m.split(kUnknownKinds);
    auto it = out.try_emplace(unknown_part, prime_).first;
    it->second.add_term(known_part, c);
  }
  return out;
}

Polynomial Polynomial::substitute(const Binding& binding) const {
  if (binding.empty()) return *this;
  Polynomial r(prime_);
  for (const auto& [m, c] : terms_) {
    FieldElement coeff = c;
    std::vector<Monomial::Factor> rest;
    for (const auto& [v, e] : m.factors()) {
      auto it = binding.find(v.index);
      if (it == binding.end()) {
        rest.push_back({v, e});
      } else {
        coeff *= it->second.pow(e);
      }
    }
    Monomial reduced;
    if (rest.size() == m.factors().size()) {
      reduced = m;
    } else {
      reduced = Monomial::from_factors(std::move(rest));
    }
    r.add_term(reduced, coeff);
  }
  return r;
}

Polynomial Polynomial::substitute(const std::map<std::uint32_t, Polynomial>& replacement) const {
  if (replacement.empty()) return *this;
  Polynomial r(prime_);
  for (const auto& [m, c] : terms_) {
    Polynomial acc = constant(c);
    std::vector<Monomial::Factor> rest;
    for (const auto& [v, e] : m.factors()) {
      auto it = replacement.find(v.index);
      if (it == replacement.end()) {
        rest.push_back({v, e});
      } else {
        acc = acc * it->second.pow(e);
      }
    }
    r += acc.times_monomial(Monomial::from_factors(std::move(rest)), FieldElement(prime_, 1));
  }
  return r;
}

FieldElement Polynomial::evaluate(const Binding& binding) const {
  Polynomial r = substitute(binding);
  if (!r.is_constant()) throw UsageError("evaluate: unbound variables remain");
  return r.constant_term();
}

std::vector<Polynomial::Term> Polynomial::sorted_terms(const MonomialOrder& order) const {
  std::vector<Term> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) { return order.less(b.first, a.first); });
  return out;
}

std::optional<Polynomial::Term> Polynomial::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) return std::nullopt;
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
    if (order.less(best->first, it->first)) best = it;
  }
  return *best;
}

std::optional<univariate::Dense> Polynomial::as_univariate(std::uint32_t var_index) const {
  univariate::Dense f;
  for (const auto& [m, c] : terms_) {
    std::uint32_t e = 0;
    for (const auto& [v, ve] : m.factors()) {
      if (v.index != var_index) return std::nullopt;
      e = ve;
    }
    if (f.size() <= e) f.resize(e + 1);
    f[e] = c.value();
  }
  univariate::trim(f);
  return f;
}

Polynomial Polynomial::from_univariate(const Prime& p, VarId v, const univariate::Dense& f) {
  Polynomial r(p);
  for (std::size_t i = 0; i < f.size(); ++i) r.add_term(Monomial::of(v, static_cast<std::uint32_t>(i)), FieldElement(p, f[i]));
  return r;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero();
  const MonomialOrder order = MonomialOrder::grevlex();
  auto lt = *divisor.leading_term(order);
  FieldElement lead_inv = lt.second.inv();
  Polynomial rem = *this;
  Polynomial q(prime_);
  while (!rem.is_zero()) {
    auto rt = *rem.leading_term(order);
    if (!lt.first.divides(rt.first)) return std::nullopt;
    Monomial qm = rt.first.quotient(lt.first);
    FieldElement qc = rt.second * lead_inv;
    q.add_term(qm, qc);
    rem -= divisor.times_monomial(qm, qc);
  }
  return q;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(leading_term(MonomialOrder::grevlex())->second.inv());
}

std::string Polynomial::to_string(const std::function<std::string(VarId)>& name) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : sorted_terms(MonomialOrder::grevlex())) {
    if (!first) os << " + ";
    first = false;
    if (m.is_one()) {
      os << c.to_string();
    } else if (c.is_one()) {
      os << m.to_string(name);
    } else {
      os << c.to_string() << "*" << m.to_string(name);
    }
  }
  return os.str();
}

std::string Polynomial::to_string() const { return to_string(default_var_name); }

}  // namespace acheck
