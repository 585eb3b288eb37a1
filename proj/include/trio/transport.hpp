#pragma once

#include <array>
#include <coroutine>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "trio/bits.hpp"
#include "trio/party.hpp"
#include "trio/task.hpp"

namespace trio {

struct Envelope {
  PartyId from;
  PartyId to;
  std::uint64_t round = 0;
  std::string tag;
  Bytes payload;
};

struct Metrics {
  std::uint64_t rounds = 0;
  /// (from, to) -> bytes sent, counted before any adversarial rewrite.
  std::map<std::pair<int, int>, std::uint64_t> bytes_per_channel;

  std::uint64_t bytes(PartyId from, PartyId to) const;
  std::uint64_t total_bytes() const;
  friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Hook through which an adversary controls the single corrupted party's
/// channel endpoints. Envelopes between honest parties never reach it.
class Interposer {
 public:
  explicit Interposer(PartyId corrupted) : corrupted_(corrupted) {}
  virtual ~Interposer() = default;

  PartyId corrupted() const noexcept { return corrupted_; }

  /// Rewrites an outgoing envelope of the corrupted party before delivery.
  virtual void tamper(Envelope& /*envelope*/) {}
  /// When true, the corrupted party stops instead of entering `phase`.
  virtual bool halt_before(std::string_view /*phase*/) { return false; }

 private:
  PartyId corrupted_;
};

/// Round-synchronous delivery with byte/round metering and an optional
/// trace ("round from to phase-tag payload-hex").
class Network {
 public:
  explicit Network(bool keep_trace = false) : keep_trace_(keep_trace) {}

  /// Delivers all envelopes of one round at once. The round counter advances
  /// only if at least one envelope flows.
  std::vector<Envelope> exchange(std::vector<Envelope> round, Interposer* adversary = nullptr);

  const Metrics& metrics() const noexcept { return metrics_; }
  const std::vector<std::string>& trace() const noexcept { return trace_; }
  std::vector<std::string> take_trace() { return std::move(trace_); }

 private:
  bool keep_trace_;
  Metrics metrics_;
  std::vector<std::string> trace_;
};

/// Why a party stopped. code names the failed check ("deadlock",
/// "circuit-check", ...), phase is the round label it happened in.
struct Abort {
  std::string code;
  std::string phase;
  std::optional<std::size_t> run;
  std::string detail;

  std::string to_string() const;
  friend bool operator==(const Abort&, const Abort&) = default;
};

class ProtocolAbort : public std::runtime_error {
 public:
  explicit ProtocolAbort(Abort abort);
  const Abort& abort() const noexcept { return abort_; }

 private:
  Abort abort_;
};

/// Raised by run_parties when the party programs fall out of step.
class HarnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Messages delivered to one party in one round.
class Inbox {
 public:
  Inbox() = default;
  Inbox(std::string phase, std::vector<Envelope> envelopes)
      : phase_(std::move(phase)), envelopes_(std::move(envelopes)) {}

  /// Payload of the envelope from `from` tagged `tag`; aborts with
  /// "missing-message" if there is none.
  const Bytes& take(PartyId from, std::string_view tag) const;
  const std::vector<Envelope>& envelopes() const noexcept { return envelopes_; }

 private:
  std::string phase_;
  std::vector<Envelope> envelopes_;
};

class PartyContext;

class ExchangeAwaiter {
 public:
  explicit ExchangeAwaiter(PartyContext& ctx) : ctx_(ctx) {}
  bool await_ready() const noexcept { return false; }
  void await_suspend(std::coroutine_handle<> h) noexcept;
  Inbox await_resume();

 private:
  PartyContext& ctx_;
};

/// A party's endpoint inside run_parties. Programs queue envelopes with
/// send() and then co_await exchange(), which closes the round.
class PartyContext {
 public:
  explicit PartyContext(PartyId self) : self_(self) {}

  PartyId self() const noexcept { return self_; }
  const std::string& phase() const noexcept { return phase_; }

  void send(PartyId to, std::string tag, Bytes payload);
  /// Ends the current round under label `phase`, expecting at least one
  /// envelope from each party in expect_from.
  ExchangeAwaiter exchange(std::string phase, std::vector<PartyId> expect_from);
  /// exchange() expecting both other parties.
  ExchangeAwaiter exchange(std::string phase);

 private:
  friend class ExchangeAwaiter;
  friend class Scheduler;

  PartyId self_;
  std::string phase_;
  std::vector<PartyId> expect_;
  std::vector<Envelope> outbox_;
  Inbox inbox_;
  std::optional<Abort> error_;
  std::coroutine_handle<> waiting_;
};

using Outcome = std::variant<BitString, Abort>;

struct RunResult {
  std::array<Outcome, 3> outcomes;
  Metrics metrics;
  std::vector<std::string> trace;

  bool accepted(PartyId p) const { return std::holds_alternative<BitString>(outcomes[p.slot()]); }
  const Outcome& outcome(PartyId p) const { return outcomes[p.slot()]; }
};

using PartyProgram = std::function<Task<BitString>(PartyContext&)>;

struct RunOptions {
  bool trace = false;
};

/// Runs three party programs in lockstep rounds on one thread. Each party
/// ends with its output or an Abort. A party still waiting on a peer that
/// finished or withheld its message aborts with code "deadlock".
RunResult run_parties(const std::array<PartyProgram, 3>& programs, Interposer* adversary = nullptr,
                      RunOptions options = {});

}  // namespace trio
