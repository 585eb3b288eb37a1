#include "trio/field.hpp"

#include <string>

namespace trio {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++r;
  }
  // These bases are sufficient for every n < 2^64.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    std::uint64_t x = pow_mod(a % n, d, n);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldElement::FieldElement(std::uint64_t value, std::uint64_t modulus)
    : value_(value), modulus_(modulus) {
  if (value >= modulus) {
    throw std::invalid_argument("field element " + std::to_string(value) +
                                " not reduced modulo " + std::to_string(modulus));
  }
}

void FieldElement::check_same_field(const FieldElement& rhs) const {
  if (modulus_ != rhs.modulus_) throw std::invalid_argument("field elements from different fields");
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
  check_same_field(rhs);
  // modulus < 2^63 so the sum cannot wrap.
  std::uint64_t sum = value_ + rhs.value_;
  if (sum >= modulus_) sum -= modulus_;
  return {sum, modulus_};
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
  check_same_field(rhs);
  return {value_ >= rhs.value_ ? value_ - rhs.value_ : value_ + modulus_ - rhs.value_, modulus_};
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
  check_same_field(rhs);
  return {mul_mod(value_, rhs.value_, modulus_), modulus_};
}

FieldElement FieldElement::operator-() const {
  return {value_ == 0 ? 0 : modulus_ - value_, modulus_};
}

FieldElement FieldElement::pow(std::uint64_t exponent) const {
  return {pow_mod(value_, exponent, modulus_), modulus_};
}

FieldElement FieldElement::inverse() const {
  if (value_ == 0) throw std::domain_error("zero has no multiplicative inverse");
  return pow(modulus_ - 2);
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= (std::uint64_t{1} << 63)) throw std::invalid_argument("modulus must be below 2^63");
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

}  // namespace trio
