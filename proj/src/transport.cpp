#include "trio/transport.hpp"

#include <algorithm>
#include <optional>

#include "trio/codec.hpp"

namespace trio {

std::uint64_t Metrics::bytes(PartyId from, PartyId to) const {
  auto it = bytes_per_channel.find({from.index(), to.index()});
  return it == bytes_per_channel.end() ? 0 : it->second;
}

std::uint64_t Metrics::total_bytes() const {
  std::uint64_t total = 0;
  for (const auto& [channel, n] : bytes_per_channel) total += n;
  return total;
}

std::vector<Envelope> Network::exchange(std::vector<Envelope> round, Interposer* adversary) {
  if (round.empty()) return round;
  ++metrics_.rounds;
  for (auto& env : round) {
    if (env.from == env.to) throw HarnessError("envelope addressed to its own sender");
    env.round = metrics_.rounds;
    metrics_.bytes_per_channel[{env.from.index(), env.to.index()}] += env.payload.size();
    if (adversary != nullptr && env.from == adversary->corrupted()) {
      const PartyId from = env.from;
      const PartyId to = env.to;
      adversary->tamper(env);
      env.from = from;  // the hook may rewrite content, not routing
      env.to = to;
      env.round = metrics_.rounds;
    }
    if (keep_trace_) {
      trace_.push_back(std::to_string(env.round) + ' ' + std::to_string(env.from.index()) + ' ' +
                       std::to_string(env.to.index()) + ' ' + env.tag + ' ' + to_hex(env.payload));
    }
  }
  return round;
}

std::string Abort::to_string() const {
  std::string out = code + " phase=" + phase;
  if (run) out += " run=" + std::to_string(*run);
  if (!detail.empty()) out += " (" + detail + ")";
  return out;
}

ProtocolAbort::ProtocolAbort(Abort abort)
    : std::runtime_error("protocol abort: " + abort.to_string()), abort_(std::move(abort)) {}

const Bytes& Inbox::take(PartyId from, std::string_view tag) const {
  for (const auto& env : envelopes_) {
    if (env.from == from && env.tag == tag) return env.payload;
  }
  throw ProtocolAbort(Abort{"missing-message", phase_, std::nullopt,
                            "no '" + std::string(tag) + "' from " + from.name()});
}

void ExchangeAwaiter::await_suspend(std::coroutine_handle<> h) noexcept { ctx_.waiting_ = h; }

Inbox ExchangeAwaiter::await_resume() {
  ctx_.waiting_ = {};
  if (ctx_.error_) {
    Abort abort = std::move(*ctx_.error_);
    ctx_.error_.reset();
    throw ProtocolAbort(std::move(abort));
  }
  return std::move(ctx_.inbox_);
}

void PartyContext::send(PartyId to, std::string tag, Bytes payload) {
  outbox_.push_back(Envelope{self_, to, 0, std::move(tag), std::move(payload)});
}

ExchangeAwaiter PartyContext::exchange(std::string phase, std::vector<PartyId> expect_from) {
  phase_ = std::move(phase);
  expect_ = std::move(expect_from);
  return ExchangeAwaiter(*this);
}

ExchangeAwaiter PartyContext::exchange(std::string phase) {
  return exchange(std::move(phase), {self_.next(), self_.prev()});
}

class Scheduler {
 public:
  Scheduler(const std::array<PartyProgram, 3>& programs, Interposer* adversary, RunOptions options)
      : programs_(programs), adversary_(adversary), network_(options.trace),
        ctx_{PartyContext(PartyId(1)), PartyContext(PartyId(2)), PartyContext(PartyId(3))} {}

  RunResult run() {
    std::array<std::optional<Task<BitString>>, 3> tasks;
    std::array<std::optional<Outcome>, 3> outcomes;
    std::array<std::coroutine_handle<>, 3> resume_at{};
    for (std::size_t i = 0; i < 3; ++i) {
      tasks[i].emplace(programs_[i](ctx_[i]));
      resume_at[i] = tasks[i]->raw();
    }

    while (true) {
      std::vector<std::size_t> waiting;
      for (std::size_t i = 0; i < 3; ++i) {
        if (outcomes[i]) continue;
        resume_at[i].resume();
        if (tasks[i]->done()) {
          outcomes[i] = finish(*tasks[i], ctx_[i].phase_);
          tasks[i].reset();
          continue;
        }
        if (!ctx_[i].waiting_) throw HarnessError("party suspended outside an exchange");
        if (adversary_ != nullptr && adversary_->corrupted().slot() == i &&
            adversary_->halt_before(ctx_[i].phase_)) {
          outcomes[i] = Abort{"halted", ctx_[i].phase_, std::nullopt, "adversary stopped the party"};
          tasks[i].reset();
          continue;
        }
        waiting.push_back(i);
      }
      if (waiting.empty()) break;

      const std::string& phase = ctx_[waiting.front()].phase_;
      for (std::size_t i : waiting) {
        if (ctx_[i].phase_ != phase) {
          throw HarnessError("phase-tag mismatch: " + ctx_[waiting.front()].self_.name() + " at '" +
                             phase + "', " + ctx_[i].self_.name() + " at '" + ctx_[i].phase_ + "'");
        }
      }

      std::vector<Envelope> round;
      for (std::size_t i = 0; i < 3; ++i) {
        auto& out = ctx_[i].outbox_;
        if (!outcomes[i]) std::move(out.begin(), out.end(), std::back_inserter(round));
        out.clear();
      }
      std::vector<Envelope> delivered = network_.exchange(std::move(round), adversary_);

      std::array<std::vector<Envelope>, 3> inboxes;
      for (auto& env : delivered) inboxes[env.to.slot()].push_back(std::move(env));
      for (std::size_t i : waiting) {
        auto& ctx = ctx_[i];
        for (PartyId from : ctx.expect_) {
          const bool got = std::any_of(inboxes[i].begin(), inboxes[i].end(),
                                       [&](const Envelope& e) { return e.from == from; });
          if (!got) {
            ctx.error_ = Abort{"deadlock", phase, std::nullopt,
                               from.name() + " owes a message at '" + phase + "'"};
            break;
          }
        }
        ctx.inbox_ = Inbox(phase, std::move(inboxes[i]));
        resume_at[i] = ctx.waiting_;
      }
    }

    RunResult result{{*std::move(outcomes[0]), *std::move(outcomes[1]), *std::move(outcomes[2])},
                     network_.metrics(),
                     network_.take_trace()};
    return result;
  }

 private:
  static Outcome finish(Task<BitString>& task, const std::string& phase) {
    try {
      return task.result();
    } catch (const ProtocolAbort& e) {
      return e.abort();
    } catch (const MalformedMessage& e) {
      return Abort{"malformed", phase, std::nullopt, e.what()};
    }
  }

  const std::array<PartyProgram, 3>& programs_;
  Interposer* adversary_;
  Network network_;
  std::array<PartyContext, 3> ctx_;
};

RunResult run_parties(const std::array<PartyProgram, 3>& programs, Interposer* adversary,
                      RunOptions options) {
  return Scheduler(programs, adversary, options).run();
}

}  // namespace trio
