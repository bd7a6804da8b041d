#pragma once

// Fixed-width Montgomery arithmetic for odd moduli below 2^256.

#include <array>
#include <cstdint>

#include <gmpxx.h>

namespace acheck::detail {

class Mont256 {
 public:
  static constexpr int N = 4;
  using Elt = std::array<std::uint64_t, N>;

  static bool fits(const mpz_class& p) { return mpz_odd_p(p.get_mpz_t()) && mpz_sizeinbase(p.get_mpz_t(), 2) <= 64 * N; }

  explicit Mont256(const mpz_class& p) : p_(raw(p)) {
    // Newton iteration for p^-1 mod 2^64
    std::uint64_t inv = 1;
    for (int i = 0; i < 6; ++i) inv *= 2 - p_[0] * inv;
    n0_ = ~inv + 1;
    mpz_class r2 = (mpz_class(1) << (2 * 64 * N)) % p;
    r2_ = raw(r2);
    r512_ = raw((mpz_class(1) << (2 * 64 * N)) % p);
    one_ = to(mpz_class(1));
  }

  Elt to(const mpz_class& x) const {
    mpz_class r = x % from_raw(p_);
    if (r < 0) r += from_raw(p_);
    return mul(raw(r), r2_);
  }

  mpz_class from(const Elt& a) const { return from_raw(mul(a, Elt{1, 0, 0, 0})); }

  const Elt& one() const { return one_; }
  static bool zero(const Elt& a) { return (a[0] | a[1] | a[2] | a[3]) == 0; }

  Elt mul(const Elt& a, const Elt& b) const {
    using u128 = unsigned __int128;
    std::uint64_t t0 = 0, t1 = 0, t2 = 0, t3 = 0, t4 = 0;
    for (int i = 0; i < N; ++i) {
      const std::uint64_t bi = b[i];
      u128 c = static_cast<u128>(a[0]) * bi + t0;
      t0 = static_cast<std::uint64_t>(c);
      c = static_cast<u128>(a[1]) * bi + t1 + static_cast<std::uint64_t>(c >> 64);
      t1 = static_cast<std::uint64_t>(c);
      c = static_cast<u128>(a[2]) * bi + t2 + static_cast<std::uint64_t>(c >> 64);
      t2 = static_cast<std::uint64_t>(c);
      c = static_cast<u128>(a[3]) * bi + t3 + static_cast<std::uint64_t>(c >> 64);
      t3 = static_cast<std::uint64_t>(c);
      c = static_cast<u128>(t4) + static_cast<std::uint64_t>(c >> 64);
      t4 = static_cast<std::uint64_t>(c);
      const std::uint64_t t5 = static_cast<std::uint64_t>(c >> 64);

      const std::uint64_t m = t0 * n0_;
      c = static_cast<u128>(m) * p_[0] + t0;
      c = static_cast<u128>(m) * p_[1] + t1 + static_cast<std::uint64_t>(c >> 64);
      t0 = static_cast<std::uint64_t>(c);
      c = static_cast<u128>(m) * p_[2] + t2 + static_cast<std::uint64_t>(c >> 64);
      t1 = static_cast<std::uint64_t>(c);
      c = static_cast<u128>(m) * p_[3] + t3 + static_cast<std::uint64_t>(c >> 64);
      t2 = static_cast<std::uint64_t>(c);
      c = static_cast<u128>(t4) + static_cast<std::uint64_t>(c >> 64);
      t3 = static_cast<std::uint64_t>(c);
      t4 = t5 + static_cast<std::uint64_t>(c >> 64);
    }
    // branch-free conditional subtraction of p
    using u128_ = unsigned __int128;
    std::uint64_t d[N], borrow = 0;
    const std::uint64_t t[N] = {t0, t1, t2, t3};
    for (int i = 0; i < N; ++i) {
      u128_ x = static_cast<u128_>(t[i]) - p_[i] - borrow;
      d[i] = static_cast<std::uint64_t>(x);
      borrow = static_cast<std::uint64_t>(x >> 64) & 1;
    }
    // keep t when it was below p and nothing spilled into t4
    const std::uint64_t keep = 0 - (borrow & static_cast<std::uint64_t>(t4 == 0));
    return {(t0 & keep) | (d[0] & ~keep), (t1 & keep) | (d[1] & ~keep), (t2 & keep) | (d[2] & ~keep),
            (t3 & keep) | (d[3] & ~keep)};
  }

  Elt sub(const Elt& a, const Elt& b) const {
    using u128 = unsigned __int128;
    Elt r;
    std::uint64_t borrow = 0;
    for (int i = 0; i < N; ++i) {
      u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
      r[i] = static_cast<std::uint64_t>(d);
      borrow = static_cast<std::uint64_t>(d >> 64) & 1;
    }
    const std::uint64_t mask = 0 - borrow;
    std::uint64_t carry = 0;
    for (int i = 0; i < N; ++i) {
      u128 s = static_cast<u128>(r[i]) + (p_[i] & mask) + carry;
      r[i] = static_cast<std::uint64_t>(s);
      carry = static_cast<std::uint64_t>(s >> 64);
    }
    return r;
  }

  // Unreduced sum of products kept as per-column 128-bit sums plus overflow counts.
  struct Wide {
    unsigned __int128 col[2 * N - 1] = {};
    std::uint64_t over[2 * N - 1] = {};
  };

  // acc += a * b
  static void mac(Wide& acc, const Elt& a, const Elt& b) {
    using u128 = unsigned __int128;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        const u128 t = static_cast<u128>(a[i]) * b[j];
        const u128 s = acc.col[i + j] + t;
        acc.over[i + j] += s < t;
        acc.col[i + j] = s;
      }
    }
  }

  // Montgomery reduction of a sum of products of Montgomery forms.
  Elt reduce(const Wide& acc) const {
    using u128 = unsigned __int128;
    std::uint64_t w[2 * N + 1];
    {
      // column k contributes col[k] at 64k and over[k] at 64(k+2); partial sums stay far below 2^128
      u128 c = 0;
      for (int k = 0; k <= 2 * N; ++k) {
        if (k < 2 * N - 1) c += static_cast<std::uint64_t>(acc.col[k]);
        if (k >= 1 && k <= 2 * N - 1) c += static_cast<std::uint64_t>(acc.col[k - 1] >> 64);
        if (k >= 2) c += acc.over[k - 2];
        w[k] = static_cast<std::uint64_t>(c);
        c >>= 64;
      }
    }
    auto carry_from = [&](int k, std::uint64_t c) {
      for (; c && k <= 2 * N; ++k) {
        u128 t = static_cast<u128>(w[k]) + c;
        w[k] = static_cast<std::uint64_t>(t);
        c = static_cast<std::uint64_t>(t >> 64);
      }
    };
    // fold the top limb back in through 2^512 mod p
    while (w[2 * N]) {
      const std::uint64_t h = w[2 * N];
      w[2 * N] = 0;
      std::uint64_t c = 0;
      for (int k = 0; k < N; ++k) {
        u128 t = static_cast<u128>(h) * r512_[k] + w[k] + c;
        w[k] = static_cast<std::uint64_t>(t);
        c = static_cast<std::uint64_t>(t >> 64);
      }
      carry_from(N, c);
    }
    for (int i = 0; i < N; ++i) {
      const std::uint64_t m = w[i] * n0_;
      std::uint64_t c = 0;
      for (int j = 0; j < N; ++j) {
        u128 t = static_cast<u128>(m) * p_[j] + w[i + j] + c;
        w[i + j] = static_cast<std::uint64_t>(t);
        c = static_cast<std::uint64_t>(t >> 64);
      }
      carry_from(i + N, c);
    }
    Elt r{w[N], w[N + 1], w[N + 2], w[N + 3]};
    std::uint64_t top = w[2 * N];
    while (top || !less(r, p_)) {
      if (less(r, p_)) --top;
      r = minus(r, p_);
    }
    return r;
  }

  Elt inv(const Elt& a) const {
    mpz_class x = from(a), r;
    mpz_invert(r.get_mpz_t(), x.get_mpz_t(), from_raw(p_).get_mpz_t());
    return to(r);
  }

 private:
  static Elt raw(const mpz_class& x) {
    Elt r{};
    std::size_t count = 0;
    mpz_export(r.data(), &count, -1, sizeof(std::uint64_t), 0, 0, x.get_mpz_t());
    return r;
  }
  static mpz_class from_raw(const Elt& a) {
    mpz_class r;
    mpz_import(r.get_mpz_t(), N, -1, sizeof(std::uint64_t), 0, 0, a.data());
    return r;
  }
  static bool less(const Elt& a, const Elt& b) {
    for (int i = N - 1; i >= 0; --i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
  // wrap-around arithmetic mod 2^256
  static Elt minus(const Elt& a, const Elt& b) {
    Elt r;
    std::uint64_t borrow = 0;
    for (int i = 0; i < N; ++i) {
      std::uint64_t d = a[i] - b[i];
      std::uint64_t b1 = a[i] < b[i];
      r[i] = d - borrow;
      borrow = b1 | (d < borrow);
    }
    return r;
  }
  Elt p_;
  std::uint64_t n0_;
  Elt r2_;
  Elt r512_;
  Elt one_;
};

}  // namespace acheck::detail
