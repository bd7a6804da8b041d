#pragma once

#include <string>

#include "acheck/poly.hpp"

namespace acheck {

// numerator / denominator with a nonzero denominator. Normalization is
// best-effort: monic denominator, exact-division cancellation, and a GCD
// when both sides are univariate in the same variable. Equality therefore
// compares by cross-multiplication.
class RationalFunction {
 public:
  explicit RationalFunction(const Prime& p) : num_(p), den_(Polynomial::constant(p, 1)) {}
  explicit RationalFunction(Polynomial num);
  RationalFunction(Polynomial num, Polynomial den);
  static RationalFunction constant(const FieldElement& c) { return RationalFunction(Polynomial::constant(c)); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  const Prime& prime() const { return num_.prime(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_one() const { return is_constant() && constant_value().is_one(); }
  // Requires is_constant().
  FieldElement constant_value() const;

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const { return *this * o.inv(); }
  RationalFunction operator-() const;
  // Throws DivisionByZero when the numerator is the zero polynomial.
  RationalFunction inv() const;

  RationalFunction substitute(const Binding& b) const;
  RationalFunction substitute(const std::map<std::uint32_t, Polynomial>& r) const;

  std::string to_string(const std::function<std::string(VarId)>& name) const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  void normalize();

  Polynomial num_;
  Polynomial den_;
};

}  // namespace acheck
