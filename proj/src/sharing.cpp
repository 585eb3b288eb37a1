#include "trio/sharing.hpp"

#include <string>

namespace trio {

XorSharing xor_share(const BitString& secret, Rng& rng) {
  XorSharing out;
  out.shares[0] = rng.bits(secret.size());
  out.shares[1] = rng.bits(secret.size());
  out.shares[2] = secret ^ out.shares[0] ^ out.shares[1];
  return out;
}

BitString xor_reconstruct(const XorSharing& sharing) {
  return sharing.shares[0] ^ sharing.shares[1] ^ sharing.shares[2];
}

BitString xor_add_local(const BitString& x_share, const BitString& y_share) {
  return x_share ^ y_share;
}

FieldElement eval_polynomial(std::span<const FieldElement> coefficients, const FieldElement& x) {
  FieldElement acc(0, x.modulus());
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<ShamirShare> shamir_share_with(const FieldElement& secret,
                                           std::span<const FieldElement> coefficients,
                                           std::size_t n_parties) {
  const std::uint64_t p = secret.modulus();
  const std::size_t t = coefficients.size();
  if (t >= n_parties) {
    throw std::invalid_argument("threshold t = " + std::to_string(t) +
                                " must be below the party count " + std::to_string(n_parties));
  }
  if (n_parties >= p) {
    throw std::invalid_argument("field too small: need p > n_parties, p = " + std::to_string(p));
  }
  std::vector<FieldElement> poly;
  poly.reserve(t + 1);
  poly.push_back(secret);
  poly.insert(poly.end(), coefficients.begin(), coefficients.end());

  std::vector<ShamirShare> shares;
  shares.reserve(n_parties);
  for (std::size_t i = 1; i <= n_parties; ++i) {
    const FieldElement point(i, p);
    shares.push_back({point, eval_polynomial(poly, point)});
  }
  return shares;
}

std::vector<ShamirShare> shamir_share(const FieldElement& secret, std::size_t t,
                                      std::size_t n_parties, Rng& rng) {
  if (t >= n_parties) {
    throw std::invalid_argument("threshold t = " + std::to_string(t) +
                                " must be below the party count " + std::to_string(n_parties));
  }
  const PrimeField field(secret.modulus());
  std::vector<FieldElement> coefficients;
  coefficients.reserve(t);
  for (std::size_t k = 0; k < t; ++k) coefficients.push_back(field.random(rng));
  return shamir_share_with(secret, coefficients, n_parties);
}

FieldElement lagrange_reconstruct(std::span<const ShamirShare> shares, std::size_t t) {
  if (shares.size() < t + 1) {
    throw std::invalid_argument("need " + std::to_string(t + 1) + " shares, got " +
                                std::to_string(shares.size()));
  }
  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (shares[i].point.is_zero()) throw std::invalid_argument("share evaluated at point 0");
    for (std::size_t j = 0; j < i; ++j) {
      if (shares[i].point == shares[j].point) {
        throw std::invalid_argument("duplicate evaluation point " +
                                    std::to_string(shares[i].point.value()));
      }
    }
  }
  const auto used = shares.first(t + 1);
  const std::uint64_t p = used[0].point.modulus();
  const FieldElement one(1 % p, p);
  FieldElement secret(0, p);
  for (std::size_t i = 0; i < used.size(); ++i) {
    // theta_i(0) = prod_{j != i} (0 - a_j) / (a_i - a_j)
    FieldElement num = one;
    FieldElement den = num;
    for (std::size_t j = 0; j < used.size(); ++j) {
      if (j == i) continue;
      num *= -used[j].point;
      den *= used[i].point - used[j].point;
    }
    secret += used[i].value * num * den.inverse();
  }
  return secret;
}

}  // namespace trio
