#pragma once

#include <gmpxx.h>

#include <vector>

#include "acheck/field.hpp"

namespace acheck::univariate {

// Dense univariate polynomial over F_p, coefficient i multiplies x^i.
// Always trimmed: no trailing zero coefficients; the zero polynomial is empty.
using Dense = std::vector<mpz_class>;

void trim(Dense& f);
int degree(const Dense& f);  // -1 for zero
Dense reduce(Dense f, const mpz_class& p);
Dense add(const Dense& a, const Dense& b, const mpz_class& p);
Dense sub(const Dense& a, const Dense& b, const mpz_class& p);
Dense mul(const Dense& a, const Dense& b, const mpz_class& p);
// Euclidean division; b must be nonzero.
void divmod(const Dense& a, const Dense& b, const mpz_class& p, Dense& q, Dense& r);
Dense monic(const Dense& f, const mpz_class& p);
Dense gcd(Dense a, Dense b, const mpz_class& p);
// base^e mod m.
Dense powmod(const Dense& base, const mpz_class& e, const Dense& m, const mpz_class& p);
mpz_class eval(const Dense& f, const mpz_class& x, const mpz_class& p);

// All distinct roots in F_p, ascending. Uses gcd(f, x^p - x) followed by
// Cantor-Zassenhaus equal-degree splitting with a fixed seed.
std::vector<mpz_class> roots(const Dense& f, const mpz_class& p);

}  // namespace acheck::univariate
