#pragma once

// Independent .r1cs encoder and random file generator for tests.

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "acheck/r1cs.hpp"

namespace ts {

using namespace acheck;

inline void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
inline void put_u64(std::vector<std::uint8_t>& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
inline void put_fe(std::vector<std::uint8_t>& b, const mpz_class& v, std::size_t width) {
  mpz_class x = v;
  for (std::size_t i = 0; i < width; ++i) {
    mpz_class byte = x % 256;
    b.push_back(static_cast<std::uint8_t>(byte.get_ui()));
    x /= 256;
  }
}

// Independent encoder following the published layout.
inline std::vector<std::uint8_t> encode(const R1csFile& f) {
  std::vector<std::uint8_t> hdr, cons, labels, out;
  put_u32(hdr, f.field_size_bytes);
  put_fe(hdr, f.prime.value(), f.field_size_bytes);
  put_u32(hdr, f.n_wires);
  put_u32(hdr, f.n_pub_out);
  put_u32(hdr, f.n_pub_in);
  put_u32(hdr, f.n_prv_in);
  put_u64(hdr, f.n_labels);
  put_u32(hdr, static_cast<std::uint32_t>(f.constraints.size()));
  for (const auto& c : f.constraints) {
    for (const auto* lc : {&c.a, &c.b, &c.c}) {
      put_u32(cons, static_cast<std::uint32_t>(lc->size()));
      for (const auto& t : *lc) {
        put_u32(cons, t.wire);
        put_fe(cons, t.coeff.value(), f.field_size_bytes);
      }
    }
  }
  for (auto l : f.wire_to_label) put_u64(labels, l);
  for (char ch : std::string("r1cs")) out.push_back(static_cast<std::uint8_t>(ch));
  put_u32(out, 1);
  put_u32(out, f.wire_to_label.empty() ? 2 : 3);
  auto section = [&](std::uint32_t type, const std::vector<std::uint8_t>& payload) {
    put_u32(out, type);
    put_u64(out, payload.size());
    out.insert(out.end(), payload.begin(), payload.end());
  };
  section(1, hdr);
  section(2, cons);
  if (!f.wire_to_label.empty()) section(3, labels);
  return out;
}

inline R1csFile random_r1cs(std::mt19937_64& rng) {
  static const std::vector<unsigned long> primes{7, 13, 65537, 2147483647};
  R1csFile f;
  if (rng() % 3 == 0) {
    f.prime = Prime::bn254();
    f.field_size_bytes = 32;
  } else {
    f.prime = Prime(primes[rng() % primes.size()]);
    f.field_size_bytes = 8 * static_cast<std::uint32_t>(1 + rng() % 2);
  }
  f.n_wires = 1 + static_cast<std::uint32_t>(rng() % 8);
  std::uint32_t rest = f.n_wires - 1;
  f.n_pub_out = rest ? static_cast<std::uint32_t>(rng() % (rest + 1)) : 0;
  rest -= f.n_pub_out;
  f.n_pub_in = rest ? static_cast<std::uint32_t>(rng() % (rest + 1)) : 0;
  rest -= f.n_pub_in;
  f.n_prv_in = rest ? static_cast<std::uint32_t>(rng() % (rest + 1)) : 0;
  f.n_labels = f.n_wires + rng() % 3;
  int n = static_cast<int>(rng() % 5);
  gmp_randclass r(gmp_randinit_default);
  r.seed(rng());
  for (int i = 0; i < n; ++i) {
    R1csConstraint c;
    for (auto* lc : {&c.a, &c.b, &c.c}) {
      int terms = static_cast<int>(rng() % 4);
      for (int t = 0; t < terms; ++t) {
        lc->push_back({static_cast<std::uint32_t>(rng() % f.n_wires), FieldElement(f.prime, r.get_z_range(f.prime.value()))});
      }
    }
    f.constraints.push_back(c);
  }
  if (rng() % 2) {
    for (std::uint32_t w = 0; w < f.n_wires; ++w) f.wire_to_label.push_back(rng() % 100);
  }
  return f;
}

}  // namespace ts
