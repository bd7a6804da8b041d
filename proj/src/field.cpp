#include "acheck/field.hpp"

#include <algorithm>

#include "acheck/errors.hpp"

namespace acheck {

namespace {
constexpr int kMillerRabinRounds = 64;
const char* kBn254Scalar =
    "21888242871839275222246405745257275088548364400416034343698204186575808495617";
}  // namespace

Prime::Prime(const mpz_class& value) {
  if (value < 2 || mpz_probab_prime_p(value.get_mpz_t(), kMillerRabinRounds) == 0) {
    throw UsageError("modulus " + value.get_str() + " is not prime");
  }
  auto impl = std::make_shared<Impl>();
  impl->value = value;
  impl->bits = mpz_sizeinbase(value.get_mpz_t(), 2);
  if (impl->bits <= 63) impl->small = mpz_get_ui(value.get_mpz_t());
  impl_ = std::move(impl);
}

Prime::Prime(const std::string& decimal) : Prime([&] {
    mpz_class v;
    if (decimal.empty() || v.set_str(decimal, 10) != 0) {
      throw UsageError("invalid decimal modulus '" + decimal + "'");
    }
    return v;
  }()) {}

Prime Prime::bn254() {
  static const Prime p{std::string(kBn254Scalar)};
  return p;
}

FieldElement::FieldElement(const Prime& p, const mpz_class& v) : prime_(p) {
  mpz_mod(value_.get_mpz_t(), v.get_mpz_t(), p.value().get_mpz_t());
}

FieldElement::FieldElement(const Prime& p, long v) : FieldElement(p, mpz_class(v)) {}

void FieldElement::check_same(const FieldElement& o) const {
  if (!(prime_ == o.prime_)) throw UsageError("field elements have different moduli");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  FieldElement r(prime_);
  r.value_ = value_ + o.value_;
  if (r.value_ >= prime_.value()) r.value_ -= prime_.value();
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  FieldElement r(prime_);
  r.value_ = value_ - o.value_;
  if (r.value_ < 0) r.value_ += prime_.value();
  return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  FieldElement r(prime_);
  mpz_mul(r.value_.get_mpz_t(), value_.get_mpz_t(), o.value_.get_mpz_t());
  mpz_mod(r.value_.get_mpz_t(), r.value_.get_mpz_t(), prime_.value().get_mpz_t());
  return r;
}

FieldElement FieldElement::operator-() const {
  FieldElement r(prime_);
  if (value_ != 0) r.value_ = prime_.value() - value_;
  return r;
}

FieldElement FieldElement::inv() const {
  if (value_ == 0) throw DivisionByZero();
  FieldElement r(prime_);
  mpz_invert(r.value_.get_mpz_t(), value_.get_mpz_t(), prime_.value().get_mpz_t());
  return r;
}

FieldElement FieldElement::pow(const mpz_class& e) const {
  FieldElement r(prime_);
  if (e < 0) return inv().pow(-e);
  mpz_powm(r.value_.get_mpz_t(), value_.get_mpz_t(), e.get_mpz_t(), prime_.value().get_mpz_t());
  return r;
}

mpz_class le_bytes_to_mpz(std::span<const std::uint8_t> bytes) {
  mpz_class v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), -1, 1, -1, 0, bytes.data());
  return v;
}

FieldElement parse_le_bytes(std::span<const std::uint8_t> bytes, const Prime& p) {
  return FieldElement(p, le_bytes_to_mpz(bytes));
}

std::vector<std::uint8_t> mpz_to_le_bytes(const mpz_class& v, std::size_t width) {
  std::vector<std::uint8_t> out(width, 0);
  if (v < 0) throw UsageError("negative value cannot be encoded");
  std::size_t needed = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  if (v != 0 && needed > width) throw UsageError("value does not fit in " + std::to_string(width) + " bytes");
  std::size_t count = 0;
  if (v != 0) mpz_export(out.data(), &count, -1, 1, -1, 0, v.get_mpz_t());
  return out;
}

}  // namespace acheck
