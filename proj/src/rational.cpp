#include "acheck/rational.hpp"

#include "acheck/errors.hpp"

namespace acheck {

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(num_.prime(), 1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero();
  normalize();
}

void RationalFunction::normalize() {
  const Prime& p = num_.prime();
  if (num_.is_zero()) {
    den_ = Polynomial::constant(p, 1);
    return;
  }
  if (den_.is_constant()) {
    if (!den_.constant_term().is_one()) {
      num_ = num_.scaled(den_.constant_term().inv());
      den_ = Polynomial::constant(p, 1);
    }
    return;
  }
  if (auto q = num_.divide_exact(den_)) {
    num_ = std::move(*q);
    den_ = Polynomial::constant(p, 1);
    return;
  }
  auto dvars = den_.variables();
  auto nvars = num_.variables();
  if (dvars.size() == 1 && nvars.size() <= 1 && (nvars.empty() || nvars[0] == dvars[0])) {
    VarId v = dvars[0];
    auto fn = *num_.as_univariate(v.index);
    auto fd = *den_.as_univariate(v.index);
    auto g = univariate::gcd(fn, fd, p.value());
    if (univariate::degree(g) > 0) {
      univariate::Dense qn, qd, r;
      univariate::divmod(fn, g, p.value(), qn, r);
      univariate::divmod(fd, g, p.value(), qd, r);
      num_ = Polynomial::from_univariate(p, v, qn);
      den_ = Polynomial::from_univariate(p, v, qd);
    }
  }
  FieldElement lead = den_.leading_term(MonomialOrder::grevlex())->second;
  if (!lead.is_one()) {
    FieldElement inv = lead.inv();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
  if (den_.is_constant()) {
    num_ = num_.scaled(den_.constant_term().inv());
    den_ = Polynomial::constant(p, 1);
  }
}

FieldElement RationalFunction::constant_value() const {
  if (!is_constant()) throw UsageError("rational function is not constant");
  return num_.constant_term() / den_.constant_term();
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  if (den_ == o.den_) return RationalFunction(num_ - o.num_, den_);
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return RationalFunction(prime());
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::inv() const {
  if (num_.is_zero()) throw DivisionByZero();
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::substitute(const Binding& b) const {
  Polynomial d = den_.substitute(b);
  if (d.is_zero()) throw DivisionByZero();
  return RationalFunction(num_.substitute(b), d);
}

RationalFunction RationalFunction::substitute(const std::map<std::uint32_t, Polynomial>& r) const {
  Polynomial d = den_.substitute(r);
  if (d.is_zero()) throw DivisionByZero();
  return RationalFunction(num_.substitute(r), d);
}

std::string RationalFunction::to_string(const std::function<std::string(VarId)>& name) const {
  if (den_.is_constant()) return num_.to_string(name);
  return "(" + num_.to_string(name) + ")/(" + den_.to_string(name) + ")";
}

}  // namespace acheck
