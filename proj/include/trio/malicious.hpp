#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trio/bits.hpp"
#include "trio/circuit.hpp"
#include "trio/commitment.hpp"
#include "trio/rng.hpp"
#include "trio/semihonest.hpp"
#include "trio/sharing.hpp"
#include "trio/transport.hpp"

namespace trio {

namespace abort_code {
inline constexpr const char* kCommitmentMismatch = "commitment-mismatch";
inline constexpr const char* kRandomInputCheck = "random-input-check";
inline constexpr const char* kCircuitCheck = "circuit-check";
inline constexpr const char* kOutputMismatch = "output-mismatch";
inline constexpr const char* kNoOutputRuns = "no-output-runs";
}  // namespace abort_code

/// Input owner's private state after preparation.
struct PreparedInput {
  BitString true_input;    // x^0
  BitString random_input;  // x^1, same length
  BitString sigma;         // one bit per run
  /// copies[j] = (x^sigma_j, x^(1-sigma_j)).
  std::vector<std::array<BitString, 2>> copies;
  BitString indicator_share;  // [c]_i, one bit per run
};

/// Draws x^1, sigma and [c]_i (in that order) and lays out the s copies.
PreparedInput prepare_input(const BitString& true_input, std::size_t s, Rng& rng);
std::array<BitString, 2> arrange_copy(const BitString& true_input, const BitString& random_input,
                                      bool sigma);

/// Party k's operands for the selection product: [t]_k = [first]_k ^ [second]_k
/// and its working indicator share, with sigma folded in by the owner only,
/// repeated across the operand width.
std::pair<BitString, BitString> selection_operands(const BitString& first_share,
                                                   const BitString& second_share,
                                                   bool indicator_share, bool is_owner,
                                                   bool sigma);

/// All three parties' selection for one (owner, run) computed in process:
/// [x]_k = [t c']_k ^ [first]_k with the ring AND pattern and the given
/// randomizers (one per party, operand width each).
XorSharing select_shares(const std::array<XorSharing, 2>& copy,
                         const std::array<bool, 3>& indicator_shares, bool sigma, PartyId owner,
                         const std::array<BitString, 3>& randomizers);

enum class CommitKind : std::uint8_t {
  RandomInput = 1,
  IndicatorShare = 2,
  InputSegment = 3,
  InternalSegment = 4,
  OutputSegment = 5,
};

/// committer << 56 | kind << 48 | run << 16 | field. Runs count from 1,
/// run 0 means "not tied to a run"; field is the owner index of an input
/// segment slice.
std::uint64_t commitment_id(PartyId committer, CommitKind kind, std::size_t run = 0,
                            std::size_t field = 0);
PartyId commitment_committer(std::uint64_t id);
CommitKind commitment_kind(std::uint64_t id);
std::size_t commitment_run(std::uint64_t id);

/// Wire record layout of commitment shares: id u64, block u32, share u64,
/// all little-endian, one record per block.
inline constexpr std::size_t kShareRecordBytes = 20;

/// Hooks through which a corrupted party deviates from the protocol. The
/// defaults behave honestly; transport-level rewriting goes through the
/// Interposer base.
class MaliciousAdversary : public Interposer {
 public:
  using Interposer::Interposer;

  /// dealt[j][f]: the sharing of field f of copy j about to be distributed.
  virtual void on_deal(const PreparedInput& /*own*/,
                       std::vector<std::array<XorSharing, 2>>& /*dealt*/) {}
  /// The corrupted party's shares of copy `run` of `owner` before selection.
  virtual void on_select_operands(PartyId /*owner*/, std::size_t /*run*/,
                                  const PreparedInput& /*own*/,
                                  std::array<BitString, 2>& /*copy_shares*/) {}
  /// All lanes computed, before the transcripts are formed.
  virtual void on_lanes_computed(const Circuit& /*circuit*/, WireShares& /*lanes*/) {}
  /// transcripts[j-1] = T^j over wires 1..n+q, before they are committed.
  virtual void on_transcripts(const Circuit& /*circuit*/,
                              std::vector<BitString>& /*transcripts*/) {}
};

struct MaliciousConfig {
  std::size_t s = 8;
  CommitParams params = CommitParams::production();
  /// Replaces the drawn indicator shares [c]_1..[c]_3.
  std::optional<std::array<BitString, 3>> forced_indicator;
  bool trace = false;
  /// Keep lane shares and prepared inputs in the result.
  bool keep_state = false;
};

struct MaliciousResult {
  RunResult run;
  /// c = [c]_1 ^ [c]_2 ^ [c]_3 as drawn.
  BitString indicator;
  std::optional<std::array<WireShares, 3>> lanes;
  std::optional<std::array<PreparedInput, 3>> prepared;
};

/// Cut-and-choose protocol with s runs. The adversary, when given, controls
/// its corrupted party. Throws std::invalid_argument for s = 0 or badly
/// sized inputs.
MaliciousResult run_malicious(const Circuit& circuit, const std::array<BitString, 3>& inputs,
                              std::uint64_t seed, const MaliciousConfig& config,
                              MaliciousAdversary* adversary = nullptr);

}  // namespace trio
