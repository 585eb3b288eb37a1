#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trio/bits.hpp"
#include "trio/circuit.hpp"
#include "trio/malicious.hpp"
#include "trio/rng.hpp"

namespace trio {

/// Guesses the indicator and flips the corrupted party's output-wire shares
/// in every run it guessed to be an output run. The guess is uniform over
/// all s-bit strings except all ones (which never leaves an output run).
class GuessIndicator : public MaliciousAdversary {
 public:
  GuessIndicator(PartyId corrupted, std::size_t s, Rng& rng);
  GuessIndicator(PartyId corrupted, BitString guess);

  const BitString& guess() const noexcept { return guess_; }
  void on_lanes_computed(const Circuit& circuit, WireShares& lanes) override;

 private:
  BitString guess_;
};

struct StrategyInfo {
  std::string name;
  std::string summary;
  std::function<std::unique_ptr<MaliciousAdversary>(PartyId corrupted, std::uint64_t seed,
                                                    const MaliciousConfig& config)>
      make;
};

/// null, guess-c, single-run-tamper, true-input-swap,
/// commitment-equivocation, inconsistent-input-sharing.
const std::vector<StrategyInfo>& strategy_catalog();
/// Throws std::invalid_argument for an unknown name.
const StrategyInfo& find_strategy(std::string_view name);

struct TrialReport {
  std::string strategy;
  std::size_t s = 0;
  std::size_t trials = 0;
  std::size_t wins = 0;
  std::size_t clean = 0;
  std::map<std::string, std::size_t> aborts;
  /// Trials where two honest parties accepted different values.
  std::size_t disagreements = 0;

  std::size_t abort_total() const;
  double win_rate() const;
  /// "strategy s trials wins clean abort:<code>=<n>..."
  std::string to_line() const;
  friend bool operator==(const TrialReport&, const TrialReport&) = default;
};

enum class TrialClass { Win, Clean, Abort };

struct TrialOutcome {
  TrialClass kind = TrialClass::Clean;
  /// Code of the lowest-index honest party that aborted.
  std::string abort_code;
  bool disagreement = false;
};

/// Win: some honest party accepted a value other than `expected`. Clean:
/// every honest party accepted `expected`. Otherwise an abort.
TrialOutcome classify(const RunResult& run, PartyId corrupted, const BitString& expected);

struct EstimateOptions {
  PartyId corrupted = PartyId(1);
  /// Fixed inputs; drawn fresh per trial when empty.
  std::optional<std::array<BitString, 3>> inputs;
  CommitParams params = CommitParams::production();
};

/// Runs `trials` independent malicious executions against the named
/// strategy. Protocol, input and strategy randomness derive from seed under
/// separate labels per trial.
TrialReport estimate(std::string_view strategy, const Circuit& circuit, std::size_t s,
                     std::size_t trials, std::uint64_t seed, const EstimateOptions& options = {});

struct Enumeration {
  std::size_t cases = 0;
  std::size_t wins = 0;
  /// Win probability with c uniform and the guess uniform over its support.
  double probability = 0;
};

/// Runs the guess-indicator attack for every (c, guess) pair with c forced.
/// Only sensible for small s.
Enumeration enumerate_guess_indicator(const Circuit& circuit, std::size_t s,
                                      const std::array<BitString, 3>& inputs, std::uint64_t seed,
                                      PartyId corrupted = PartyId(1));

}  // namespace trio
