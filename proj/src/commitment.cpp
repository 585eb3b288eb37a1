#include "trio/commitment.hpp"

#include <stdexcept>
#include <string>

namespace trio {

CommitParams::CommitParams(PrimeField field, unsigned block_bits)
    : field_(field), block_bits_(block_bits) {
  const std::uint64_t p = field_.modulus();
  if (block_bits_ == 0 || block_bits_ > 61) {
    throw std::invalid_argument("block size must be between 1 and 61 bits");
  }
  if (p <= 3 || p <= (std::uint64_t{1} << (block_bits_ + 1))) {
    throw std::invalid_argument("commitment needs p > 3 and p > 2^(k+1); p = " +
                                std::to_string(p) + ", k = " + std::to_string(block_bits_));
  }
}

CommitParams CommitParams::production() { return CommitParams(PrimeField::mersenne61(), 59); }

ValueEncoding encode_value(const BitString& value, const CommitParams& params) {
  ValueEncoding out;
  out.original_len = value.size();
  const std::size_t k = params.block_bits();
  out.blocks.reserve(params.blocks_for(value.size()));
  for (std::size_t pos = 0; pos < value.size(); pos += k) {
    const std::size_t width = std::min(k, value.size() - pos);
    std::uint64_t block = 0;
    for (std::size_t i = 0; i < width; ++i) block = (block << 1U) | (value.get(pos + i) ? 1U : 0U);
    out.blocks.push_back(params.field().element(block));
  }
  return out;
}

BitString decode_value(const ValueEncoding& encoding, const CommitParams& params) {
  const std::size_t k = params.block_bits();
  if (encoding.blocks.size() != params.blocks_for(encoding.original_len)) {
    throw std::domain_error("block count does not match the encoded length");
  }
  BitString out(encoding.original_len);
  for (std::size_t b = 0; b < encoding.blocks.size(); ++b) {
    const std::size_t pos = b * k;
    const std::size_t width = std::min(k, encoding.original_len - pos);
    const std::uint64_t block = encoding.blocks[b].value();
    if (width < 64 && (block >> width) != 0) {
      throw std::domain_error("block " + std::to_string(b) + " exceeds " + std::to_string(width) +
                              " bits");
    }
    for (std::size_t i = 0; i < width; ++i) out.set(pos + i, (block >> (width - 1 - i)) & 1U);
  }
  return out;
}

ShareTriple deal_blocks_with(std::span<const FieldElement> blocks,
                             std::span<const FieldElement> slopes) {
  if (blocks.size() != slopes.size()) throw std::invalid_argument("one slope per block required");
  ShareTriple out;
  for (auto& d : out) d.reserve(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    FieldElement value = blocks[b];
    for (std::size_t j = 0; j < 3; ++j) {
      value += slopes[b];  // f(j) = v + a j
      out[j].push_back(value);
    }
  }
  return out;
}

ShareTriple deal_blocks(std::span<const FieldElement> blocks, Rng& rng) {
  std::vector<FieldElement> slopes;
  slopes.reserve(blocks.size());
  for (const auto& b : blocks) slopes.emplace_back(rng.below(b.modulus()), b.modulus());
  return deal_blocks_with(blocks, slopes);
}

std::optional<std::vector<FieldElement>> verify_opening(const BlockShares& d1,
                                                        const BlockShares& d2,
                                                        const BlockShares& d3) {
  if (d1.size() != d2.size() || d2.size() != d3.size()) return std::nullopt;
  std::vector<FieldElement> out;
  out.reserve(d1.size());
  for (std::size_t b = 0; b < d1.size(); ++b) {
    const std::uint64_t p = d1[b].modulus();
    if (d2[b].modulus() != p || d3[b].modulus() != p) return std::nullopt;
    const FieldElement two(2, p);
    const FieldElement three(3, p);
    // Line intercepts f(0) through points (1,d1),(2,d2) / (2,d2),(3,d3) /
    // (3,d3),(1,d1). The third has denominator -2, so compare 2*d^(1)
    // against its numerator instead of dividing.
    const FieldElement r1 = two * d1[b] - d2[b];
    const FieldElement r2 = three * d2[b] - two * d3[b];
    const FieldElement r3_twice = three * d1[b] - d3[b];
    if (!(r1 == r2 && two * r1 == r3_twice)) return std::nullopt;
    out.push_back(r1);
  }
  return out;
}

Commitment::Commitment(PartyId committer, ShareTriple shares, std::size_t original_len,
                       const CommitParams& params)
    : committer_(committer), shares_(std::move(shares)), original_len_(original_len),
      params_(params) {
  if (shares_[0].size() != shares_[1].size() || shares_[1].size() != shares_[2].size()) {
    throw std::invalid_argument("share records differ in block count");
  }
}

Commitment Commitment::commit(PartyId committer, const BitString& value,
                              const CommitParams& params, Rng& rng) {
  const ValueEncoding enc = encode_value(value, params);
  return Commitment(committer, deal_blocks(enc.blocks, rng), value.size(), params);
}

Commitment Commitment::from_shares(PartyId committer, ShareTriple shares,
                                   std::size_t original_len, const CommitParams& params) {
  return Commitment(committer, std::move(shares), original_len, params);
}

std::optional<std::vector<FieldElement>> Commitment::open_blocks(
    const std::optional<Substitution>& substitution) {
  if (status_ == CommitmentStatus::Failed) return std::nullopt;
  ShareTriple revealed = shares_;
  if (substitution) revealed[substitution->party.slot()] = substitution->shares;
  auto blocks = verify_opening(revealed[0], revealed[1], revealed[2]);
  if (!blocks) {
    status_ = CommitmentStatus::Failed;
    opened_.reset();
    return std::nullopt;
  }
  if (opened_ && *opened_ != *blocks) {
    throw std::logic_error("binding violated: commitment opened to two different values");
  }
  status_ = CommitmentStatus::Opened;
  opened_ = blocks;
  return blocks;
}

std::optional<BitString> Commitment::open(const std::optional<Substitution>& substitution) {
  auto blocks = open_blocks(substitution);
  if (!blocks) return std::nullopt;
  try {
    return decode_value(ValueEncoding{std::move(*blocks), original_len_}, params_);
  } catch (const std::domain_error&) {
    status_ = CommitmentStatus::Failed;
    return std::nullopt;
  }
}

namespace {

Commitment combine(const Commitment& a, const Commitment& b, bool subtract) {
  if (a.committer() != b.committer()) {
    throw std::invalid_argument("homomorphic ops need commitments from the same committer");
  }
  if (a.block_count() != b.block_count()) {
    throw std::invalid_argument("homomorphic ops need equal block counts");
  }
  ShareTriple out;
  for (std::size_t j = 0; j < 3; ++j) {
    out[j].reserve(a.block_count());
    for (std::size_t blk = 0; blk < a.block_count(); ++blk) {
      const auto& x = a.shares()[j][blk];
      const auto& y = b.shares()[j][blk];
      out[j].push_back(subtract ? x - y : x + y);
    }
  }
  return Commitment::from_shares(a.committer(), std::move(out),
                                 std::max(a.original_len(), b.original_len()), a.params());
}

}  // namespace

Commitment homomorphic_add(const Commitment& a, const Commitment& b) { return combine(a, b, false); }
Commitment homomorphic_sub(const Commitment& a, const Commitment& b) { return combine(a, b, true); }

}  // namespace trio
