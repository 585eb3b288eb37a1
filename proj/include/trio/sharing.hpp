#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "trio/bits.hpp"
#include "trio/field.hpp"
#include "trio/party.hpp"
#include "trio/rng.hpp"

namespace trio {

/// 3-of-3 XOR sharing ([x]_1, [x]_2, [x]_3).
struct XorSharing {
  std::array<BitString, 3> shares;

  const BitString& operator[](PartyId p) const { return shares[p.slot()]; }
  BitString& operator[](PartyId p) { return shares[p.slot()]; }
};

/// First two shares drawn from rng, the third forced so the XOR is secret.
XorSharing xor_share(const BitString& secret, Rng& rng);
/// Throws std::length_error if the shares differ in length.
BitString xor_reconstruct(const XorSharing& sharing);
/// [x ^ y]_i = [x]_i ^ [y]_i, computed locally by one party.
BitString xor_add_local(const BitString& x_share, const BitString& y_share);

struct ShamirShare {
  FieldElement point;  // alpha_i, nonzero
  FieldElement value;  // f(alpha_i)

  friend bool operator==(const ShamirShare&, const ShamirShare&) = default;
};

/// Shamir (t, n_parties) sharing with alpha_i = i. Requires
/// 0 <= t < n_parties < p; throws std::invalid_argument otherwise.
std::vector<ShamirShare> shamir_share(const FieldElement& secret, std::size_t t,
                                      std::size_t n_parties, Rng& rng);

/// Same as shamir_share with the polynomial's coefficients 1..t given
/// explicitly (coefficients[k-1] multiplies x^k).
std::vector<ShamirShare> shamir_share_with(const FieldElement& secret,
                                           std::span<const FieldElement> coefficients,
                                           std::size_t n_parties);

/// f(0) for the degree-<=t polynomial through the first t+1 shares.
/// Throws std::invalid_argument on fewer than t+1 shares, a zero point,
/// duplicate points, or mixed fields.
FieldElement lagrange_reconstruct(std::span<const ShamirShare> shares, std::size_t t);

/// Evaluates sum_k coefficients[k] x^k.
FieldElement eval_polynomial(std::span<const FieldElement> coefficients, const FieldElement& x);

}  // namespace trio
