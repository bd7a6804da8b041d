#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace acheck {

// An odd or even prime modulus, shared by handle. Construction verifies
// primality with 64 Miller-Rabin rounds.
class Prime {
 public:
  explicit Prime(const mpz_class& value);
  explicit Prime(const std::string& decimal);
  explicit Prime(unsigned long value) : Prime(mpz_class(value)) {}

  static Prime bn254();

  const mpz_class& value() const { return impl_->value; }
  std::size_t bits() const { return impl_->bits; }
  // Fits in 63 bits: callers may use machine-word arithmetic.
  bool is_small() const { return impl_->small != 0; }
  std::uint64_t small_value() const { return impl_->small; }
  std::string to_string() const { return impl_->value.get_str(); }

  friend bool operator==(const Prime& a, const Prime& b) {
    return a.impl_ == b.impl_ || a.impl_->value == b.impl_->value;
  }

 private:
  struct Impl {
    mpz_class value;
    std::size_t bits = 0;
    std::uint64_t small = 0;
  };
  std::shared_ptr<const Impl> impl_;
};

// Canonical residue in [0, p).
class FieldElement {
 public:
  explicit FieldElement(const Prime& p) : prime_(p), value_(0) {}
  FieldElement(const Prime& p, const mpz_class& v);
  FieldElement(const Prime& p, long v);

  const Prime& prime() const { return prime_; }
  const mpz_class& value() const { return value_; }

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const { return *this * o.inv(); }
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  // Throws DivisionByZero for zero.
  FieldElement inv() const;
  FieldElement pow(const mpz_class& e) const;

  std::string to_string() const { return value_.get_str(); }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.value_ == b.value_ && a.prime_ == b.prime_;
  }
  // Orders by residue only; used for deterministic sorting.
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return a.value_ < b.value_; }

 private:
  void check_same(const FieldElement& o) const;

  Prime prime_;
  mpz_class value_;
};

// Little-endian bytes reduced modulo p.
FieldElement parse_le_bytes(std::span<const std::uint8_t> bytes, const Prime& p);
mpz_class le_bytes_to_mpz(std::span<const std::uint8_t> bytes);
// Writes exactly `width` little-endian bytes; the value must fit.
std::vector<std::uint8_t> mpz_to_le_bytes(const mpz_class& v, std::size_t width);

}  // namespace acheck
