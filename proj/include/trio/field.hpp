#pragma once

#include <cstdint>
#include <stdexcept>

#include "trio/rng.hpp"

namespace trio {

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Element of F_p. Carries its modulus so that mixing fields is caught.
class FieldElement {
 public:
  FieldElement() = default;
  /// value must already be reduced (< modulus).
  FieldElement(std::uint64_t value, std::uint64_t modulus);

  std::uint64_t value() const noexcept { return value_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

  FieldElement operator+(const FieldElement& rhs) const;
  FieldElement operator-(const FieldElement& rhs) const;
  FieldElement operator*(const FieldElement& rhs) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& rhs) { return *this = *this + rhs; }
  FieldElement& operator-=(const FieldElement& rhs) { return *this = *this - rhs; }
  FieldElement& operator*=(const FieldElement& rhs) { return *this = *this * rhs; }

  /// Multiplicative inverse; throws std::domain_error for zero.
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t exponent) const;

  bool is_zero() const noexcept { return value_ == 0; }
  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  void check_same_field(const FieldElement& rhs) const;

  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 2;
};

/// F_p for a prime p < 2^63.
class PrimeField {
 public:
  /// Throws std::invalid_argument if p is not prime or p >= 2^63.
  explicit PrimeField(std::uint64_t p);

  static PrimeField mersenne61() { return PrimeField((std::uint64_t{1} << 61) - 1); }

  std::uint64_t modulus() const noexcept { return p_; }
  FieldElement element(std::uint64_t v) const { return FieldElement(v % p_, p_); }
  FieldElement zero() const { return FieldElement(0, p_); }
  FieldElement one() const { return FieldElement(1, p_); }
  FieldElement random(Rng& rng) const { return FieldElement(rng.below(p_), p_); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

}  // namespace trio
