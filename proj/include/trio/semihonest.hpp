#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trio/bits.hpp"
#include "trio/circuit.hpp"
#include "trio/rng.hpp"
#include "trio/task.hpp"
#include "trio/transport.hpp"

namespace trio {

/// One party's shares of the circuit wires, width bits per wire (1 for a
/// single evaluation, s for s batched lanes). Wires are 1-based.
class WireShares {
 public:
  WireShares() = default;
  WireShares(std::size_t wires, std::size_t width);

  std::size_t wire_count() const noexcept { return values_.size(); }
  std::size_t width() const noexcept { return width_; }

  bool has(std::size_t w) const;
  /// Throws std::logic_error if wire w has not been computed yet.
  const BitString& get(std::size_t w) const;
  void set(std::size_t w, BitString value);
  void flip(std::size_t w, std::size_t lane);

  /// Lane j of wires r.first..r.last, in wire order.
  BitString lane(std::size_t j, WireRange r) const;

 private:
  std::size_t width_ = 0;
  std::vector<BitString> values_;
  std::vector<bool> computed_;
};

/// P_i's share of a AND b from its own operand shares, its predecessor's
/// shares, and both randomizers.
BitString and_share(const BitString& a_own, const BitString& b_own, const BitString& a_prev,
                    const BitString& b_prev, const BitString& r_own, const BitString& r_prev);

/// Operand shares for a group of AND products sent under one envelope tag.
struct AndBatch {
  std::string tag;
  std::vector<BitString> a;
  std::vector<BitString> b;
};

/// One ring round: P_i sends ([a]_i, [b]_i, r_i) for every product to its
/// successor and receives its predecessor's triples. Returns the product
/// shares batch by batch.
Task<std::vector<std::vector<BitString>>> ring_and(PartyContext& ctx, std::string phase,
                                                   std::vector<AndBatch> batches, Rng& rng);

std::string and_phase(std::size_t depth);

/// Evaluates every gate on already loaded input shares: XOR locally, one
/// round per AND depth.
Task<void> evaluate_gates(PartyContext& ctx, const Circuit& circuit, WireShares& wires, Rng& rng);

struct SemiHonestOptions {
  bool trace = false;
  /// Keep every party's final wire shares in the result.
  bool keep_shares = false;
};

struct SemiHonestResult {
  RunResult run;
  std::optional<std::array<WireShares, 3>> shares;
};

/// Inputs are the three parties' bit strings, sized to their input ranges
/// (std::invalid_argument otherwise). Party randomness derives from seed.
SemiHonestResult run_semi_honest(const Circuit& circuit, const std::array<BitString, 3>& inputs,
                                 std::uint64_t seed, Interposer* adversary = nullptr,
                                 SemiHonestOptions options = {});

/// Throws std::invalid_argument if an input does not fit its party's range.
void check_inputs(const Circuit& circuit, const std::array<BitString, 3>& inputs);
BitString join_inputs(const std::array<BitString, 3>& inputs);

}  // namespace trio
