#include "acheck/univariate.hpp"

#include <algorithm>

#include "acheck/errors.hpp"

namespace acheck::univariate {

void trim(Dense& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Dense& f) { return static_cast<int>(f.size()) - 1; }

Dense reduce(Dense f, const mpz_class& p) {
  for (auto& c : f) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
  trim(f);
  return f;
}

Dense add(const Dense& a, const Dense& b, const mpz_class& p) {
  Dense r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  return reduce(std::move(r), p);
}

Dense sub(const Dense& a, const Dense& b, const mpz_class& p) {
  Dense r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  return reduce(std::move(r), p);
}

Dense mul(const Dense& a, const Dense& b, const mpz_class& p) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return reduce(std::move(r), p);
}

void divmod(const Dense& a, const Dense& b, const mpz_class& p, Dense& q, Dense& r) {
  if (b.empty()) throw DivisionByZero();
  r = a;
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, 0);
  mpz_class lead_inv;
  mpz_invert(lead_inv.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t());
  for (std::size_t k = r.size(); k-- >= b.size();) {
    mpz_class c = r[k] * lead_inv % p;
    if (c < 0) c += p;
    std::size_t shift = k - (b.size() - 1);
    q[shift] = c;
    if (c != 0) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        r[shift + j] -= c * b[j];
        mpz_mod(r[shift + j].get_mpz_t(), r[shift + j].get_mpz_t(), p.get_mpz_t());
      }
    }
    if (k == 0) break;
  }
  trim(q);
  trim(r);
}

Dense monic(const Dense& f, const mpz_class& p) {
  if (f.empty()) return f;
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), p.get_mpz_t());
  Dense r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i] * inv % p;
  return r;
}

Dense gcd(Dense a, Dense b, const mpz_class& p) {
  while (!b.empty()) {
    Dense q, r;
    divmod(a, b, p, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Dense powmod(const Dense& base, const mpz_class& e, const Dense& m, const mpz_class& p) {
  Dense result{1};
  Dense q, r;
  divmod(result, m, p, q, r);
  result = r;
  divmod(base, m, p, q, r);
  Dense b = r;
  std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = nbits; i-- > 0;) {
    divmod(mul(result, result, p), m, p, q, r);
    result = r;
    if (mpz_tstbit(e.get_mpz_t(), i)) {
      divmod(mul(result, b, p), m, p, q, r);
      result = r;
    }
  }
  return result;
}

mpz_class eval(const Dense& f, const mpz_class& x, const mpz_class& p) {
  mpz_class acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = (acc * x + f[i]) % p;
  }
  if (acc < 0) acc += p;
  return acc;
}

namespace {

// g is monic, squarefree, and a product of distinct linear factors.
void split_linear(const Dense& g, const mpz_class& p, gmp_randclass& rng, std::vector<mpz_class>& out) {
  int d = degree(g);
  if (d <= 0) return;
  if (d == 1) {
    mpz_class root = (p - g[0]) % p;
    out.push_back(root);
    return;
  }
  if (p == 2) {
    for (long x = 0; x < 2; ++x) {
      if (eval(g, mpz_class(x), p) == 0) out.emplace_back(x);
    }
    return;
  }
  mpz_class half = (p - 1) / 2;
  for (;;) {
    mpz_class a = rng.get_z_range(p);
    Dense h = powmod(Dense{a, 1}, half, g, p);
    h = sub(h, Dense{1}, p);
    Dense f = gcd(g, h, p);
    int fd = degree(f);
    if (fd > 0 && fd < d) {
      Dense q, r;
      divmod(g, f, p, q, r);
      split_linear(f, p, rng, out);
      split_linear(monic(q, p), p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<mpz_class> roots(const Dense& f_in, const mpz_class& p) {
  Dense f = monic(reduce(f_in, p), p);
  std::vector<mpz_class> out;
  if (degree(f) <= 0) return out;
  // x^p - x restricted modulo f
  Dense xp = powmod(Dense{0, 1}, p, f, p);
  Dense g = gcd(f, sub(xp, Dense{0, 1}, p), p);
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0x5eed);
  split_linear(g, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace acheck::univariate
