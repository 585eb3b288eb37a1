#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "trio/bits.hpp"
#include "trio/field.hpp"
#include "trio/party.hpp"
#include "trio/rng.hpp"

namespace trio {

/// Field and block size for the Shamir-based three-party commitment.
/// Requires p > 3 and p > 2^(k+1).
class CommitParams {
 public:
  CommitParams(PrimeField field, unsigned block_bits);

  /// p = 2^61 - 1, k = 59.
  static CommitParams production();

  const PrimeField& field() const noexcept { return field_; }
  unsigned block_bits() const noexcept { return block_bits_; }
  std::size_t blocks_for(std::size_t bits) const noexcept {
    return (bits + block_bits_ - 1) / block_bits_;
  }

 private:
  PrimeField field_;
  unsigned block_bits_;
};

/// A bit string cut into k-bit blocks, each read big-endian (first bit most
/// significant). The last block holds the remaining bits.
struct ValueEncoding {
  std::vector<FieldElement> blocks;
  std::size_t original_len = 0;
};

ValueEncoding encode_value(const BitString& value, const CommitParams& params);
/// Throws std::domain_error if a block does not fit its bit width.
BitString decode_value(const ValueEncoding& encoding, const CommitParams& params);

/// One party's share record: one field element per block.
using BlockShares = std::vector<FieldElement>;
/// (d_1, d_2, d_3) for every block.
using ShareTriple = std::array<BlockShares, 3>;

/// Committer side: f_b(x) = v_b + a_b x with a_b uniform, d_j = f_b(j).
ShareTriple deal_blocks(std::span<const FieldElement> blocks, Rng& rng);
ShareTriple deal_blocks_with(std::span<const FieldElement> blocks,
                             std::span<const FieldElement> slopes);

/// Opening check run by each party on the three revealed share records:
/// d^(1) from (d_1, d_2), d^(2) from (d_2, d_3), d^(3) from (d_3, d_1) must
/// agree for every block. Returns the blocks, or nullopt (abort) on any
/// disagreement or shape mismatch.
std::optional<std::vector<FieldElement>> verify_opening(const BlockShares& d1,
                                                        const BlockShares& d2,
                                                        const BlockShares& d3);

enum class CommitmentStatus { Committed, Opened, Failed };

/// Shares revealed by a deviating party at opening time in place of its own.
struct Substitution {
  PartyId party;
  BlockShares shares;
};

/// In-process view of one commitment: the committer, all three share
/// records as distributed, and the open/verify state.
class Commitment {
 public:
  static Commitment commit(PartyId committer, const BitString& value,
                           const CommitParams& params, Rng& rng);
  static Commitment from_shares(PartyId committer, ShareTriple shares, std::size_t original_len,
                                const CommitParams& params);

  PartyId committer() const noexcept { return committer_; }
  CommitmentStatus status() const noexcept { return status_; }
  const BlockShares& share(PartyId party) const { return shares_[party.slot()]; }
  const ShareTriple& shares() const noexcept { return shares_; }
  std::size_t block_count() const noexcept { return shares_[0].size(); }
  std::size_t original_len() const noexcept { return original_len_; }
  const CommitParams& params() const noexcept { return params_; }

  /// Uncommitment: every party reveals its share record (or the substitute),
  /// and the pairwise interpolation check runs. Failure poisons the commitment:
  /// status becomes Failed and every later open also aborts.
  std::optional<std::vector<FieldElement>> open_blocks(
      const std::optional<Substitution>& substitution = std::nullopt);
  /// open_blocks followed by decoding; a block out of range counts as abort.
  std::optional<BitString> open(const std::optional<Substitution>& substitution = std::nullopt);

 private:
  Commitment(PartyId committer, ShareTriple shares, std::size_t original_len,
             const CommitParams& params);

  PartyId committer_;
  ShareTriple shares_;
  std::size_t original_len_;
  CommitParams params_;
  CommitmentStatus status_ = CommitmentStatus::Committed;
  std::optional<std::vector<FieldElement>> opened_;
};

/// Share-wise sum/difference; both commitments must come from the same
/// committer and have the same block count (std::invalid_argument otherwise).
Commitment homomorphic_add(const Commitment& a, const Commitment& b);
Commitment homomorphic_sub(const Commitment& a, const Commitment& b);

}  // namespace trio
