#include "trio/malicious.hpp"

#include <map>
#include <memory>
#include <stdexcept>

#include "trio/codec.hpp"

namespace trio {

PreparedInput prepare_input(const BitString& true_input, std::size_t s, Rng& rng) {
  PreparedInput out;
  out.true_input = true_input;
  out.random_input = rng.bits(true_input.size());
  out.sigma = rng.bits(s);
  out.indicator_share = rng.bits(s);
  out.copies.reserve(s);
  for (std::size_t j = 0; j < s; ++j) {
    out.copies.push_back(arrange_copy(out.true_input, out.random_input, out.sigma.get(j)));
  }
  return out;
}

std::array<BitString, 2> arrange_copy(const BitString& true_input, const BitString& random_input,
                                      bool sigma) {
  if (true_input.size() != random_input.size()) {
    throw std::length_error("true and random input differ in length");
  }
  if (sigma) return {random_input, true_input};
  return {true_input, random_input};
}

std::pair<BitString, BitString> selection_operands(const BitString& first_share,
                                                   const BitString& second_share,
                                                   bool indicator_share, bool is_owner,
                                                   bool sigma) {
  const bool working = indicator_share != (is_owner && sigma);
  return {first_share ^ second_share, BitString(first_share.size(), working)};
}

XorSharing select_shares(const std::array<XorSharing, 2>& copy,
                         const std::array<bool, 3>& indicator_shares, bool sigma, PartyId owner,
                         const std::array<BitString, 3>& randomizers) {
  std::array<std::pair<BitString, BitString>, 3> ops;
  for (PartyId k : kParties) {
    ops[k.slot()] = selection_operands(copy[0][k], copy[1][k], indicator_shares[k.slot()],
                                       k == owner, sigma);
  }
  XorSharing out;
  for (PartyId k : kParties) {
    const auto& own = ops[k.slot()];
    const auto& prev = ops[k.prev().slot()];
    out[k] = and_share(own.first, own.second, prev.first, prev.second, randomizers[k.slot()],
                       randomizers[k.prev().slot()]) ^
             copy[0][k];
  }
  return out;
}

std::uint64_t commitment_id(PartyId committer, CommitKind kind, std::size_t run,
                            std::size_t field) {
  return std::uint64_t(committer.index()) << 56 | std::uint64_t(kind) << 48 |
         (std::uint64_t(run) & 0xffffffffULL) << 16 | (std::uint64_t(field) & 0xffffULL);
}

PartyId commitment_committer(std::uint64_t id) { return PartyId(static_cast<int>(id >> 56)); }
CommitKind commitment_kind(std::uint64_t id) { return CommitKind((id >> 48) & 0xff); }
std::size_t commitment_run(std::uint64_t id) { return (id >> 16) & 0xffffffffULL; }

namespace {

[[noreturn]] void fail(const char* code, std::string phase, std::size_t run, std::string detail) {
  std::optional<std::size_t> at;
  if (run != 0) at = run;
  throw ProtocolAbort(Abort{code, std::move(phase), at, std::move(detail)});
}

void put_shares(ByteWriter& w, std::uint64_t id, const BlockShares& shares) {
  for (std::size_t b = 0; b < shares.size(); ++b) {
    w.u64(id);
    w.u32(static_cast<std::uint32_t>(b));
    w.u64(shares[b].value());
  }
}

BlockShares get_shares(ByteReader& r, std::uint64_t id, std::size_t blocks, std::uint64_t p) {
  BlockShares out;
  out.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    if (r.u64() != id || r.u32() != b) throw MalformedMessage("unexpected commitment record");
    const std::uint64_t v = r.u64();
    if (v >= p) throw MalformedMessage("share is not a field element");
    out.emplace_back(v, p);
  }
  return out;
}

std::string select_tag(PartyId owner, std::size_t run) {
  return "select:" + std::to_string(owner.index()) + ":" + std::to_string(run);
}

std::string describe(std::uint64_t id) {
  static constexpr const char* kinds[] = {"?", "random input", "indicator share", "input segment",
                                          "internal segment", "output segment"};
  const auto kind = static_cast<std::size_t>(commitment_kind(id));
  return std::string(kind < 6 ? kinds[kind] : "?") + " of " + commitment_committer(id).name();
}

using EnvelopePlan = std::vector<std::pair<std::string, std::vector<std::uint64_t>>>;

class MaliciousParty {
 public:
  MaliciousParty(const Circuit& circuit, const MaliciousConfig& config, PartyId self,
                 BitString input, Rng& rng, MaliciousAdversary* deviation)
      : circuit_(circuit), cfg_(config), self_(self), input_(std::move(input)), rng_(rng),
        dev_(deviation) {}

  Task<BitString> run(PartyContext& ctx) {
    co_await prep(ctx);
    co_await select(ctx);
    co_await evaluate_gates(ctx, circuit_, wires_, rng_);
    if (dev_ != nullptr) dev_->on_lanes_computed(circuit_, wires_);
    co_await commit_transcripts(ctx);
    co_await open_indicator(ctx);
    co_await open_inputs(ctx);
    co_await open_internals(ctx);
    BitString y = co_await open_outputs(ctx);
    co_return y;
  }

  const PreparedInput& prepared() const noexcept { return prepared_; }
  const WireShares& lanes() const noexcept { return wires_; }

 private:
  struct Held {
    std::size_t bits;
    BlockShares share;
  };

  std::size_t s() const noexcept { return cfg_.s; }
  std::size_t width_of(PartyId owner) const {
    return circuit_.party_input_range(owner.index()).size();
  }
  std::array<PartyId, 2> others() const { return {self_.next(), self_.prev()}; }
  bool verification(std::size_t run) const { return c_.get(run - 1); }

  void commit(std::uint64_t id, const BitString& value, std::array<ByteWriter, 3>& out) {
    const ValueEncoding enc = encode_value(value, cfg_.params);
    const ShareTriple d = deal_blocks(enc.blocks, rng_);
    book_[id] = Held{value.size(), d[self_.slot()]};
    for (PartyId p : others()) put_shares(out[p.slot()], id, d[p.slot()]);
  }

  void receive(ByteReader& r, std::uint64_t id, std::size_t bits) {
    book_[id] = Held{bits, get_shares(r, id, cfg_.params.blocks_for(bits),
                                      cfg_.params.field().modulus())};
  }

  Task<void> prep(PartyContext& ctx) {
    prepared_ = prepare_input(input_, s(), rng_);
    if (cfg_.forced_indicator) prepared_.indicator_share = (*cfg_.forced_indicator)[self_.slot()];

    std::vector<std::array<XorSharing, 2>> dealt(s());
    for (std::size_t j = 0; j < s(); ++j) {
      for (std::size_t f = 0; f < 2; ++f) dealt[j][f] = xor_share(prepared_.copies[j][f], rng_);
    }
    if (dev_ != nullptr) dev_->on_deal(prepared_, dealt);

    for (auto& slot : copies_) slot.resize(s());
    std::array<BitString, 3> outgoing;
    for (std::size_t j = 0; j < s(); ++j) {
      for (std::size_t f = 0; f < 2; ++f) {
        copies_[self_.slot()][j][f] = dealt[j][f][self_];
        for (PartyId p : others()) outgoing[p.slot()].append(dealt[j][f][p]);
      }
    }
    std::array<ByteWriter, 3> records;
    commit(commitment_id(self_, CommitKind::RandomInput), prepared_.random_input, records);
    commit(commitment_id(self_, CommitKind::IndicatorShare), prepared_.indicator_share, records);
    for (PartyId p : others()) {
      Bytes payload = to_bytes(outgoing[p.slot()]);
      const Bytes tail = records[p.slot()].take();
      payload.insert(payload.end(), tail.begin(), tail.end());
      ctx.send(p, "prep", std::move(payload));
    }

    Inbox inbox = co_await ctx.exchange("prep");

    for (PartyId owner : others()) {
      const std::size_t width = width_of(owner);
      const std::span<const std::uint8_t> raw = inbox.take(owner, "prep");
      const std::size_t bits = 2 * s() * width;
      const std::size_t head = (bits + 7) / 8;
      if (raw.size() < head) throw MalformedMessage("prep payload truncated");
      const BitString got = unpack_bits(raw.first(head), bits);
      for (std::size_t j = 0; j < s(); ++j) {
        for (std::size_t f = 0; f < 2; ++f) {
          copies_[owner.slot()][j][f] = got.slice((2 * j + f) * width, width);
        }
      }
      ByteReader r(raw.subspan(head));
      receive(r, commitment_id(owner, CommitKind::RandomInput), width);
      receive(r, commitment_id(owner, CommitKind::IndicatorShare), s());
      r.expect_done();
    }
  }

  Task<void> select(PartyContext& ctx) {
    std::vector<AndBatch> batches;
    for (PartyId owner : kParties) {
      for (std::size_t j = 0; j < s(); ++j) {
        auto& shares = copies_[owner.slot()][j];
        if (dev_ != nullptr) dev_->on_select_operands(owner, j + 1, prepared_, shares);
        const bool is_owner = owner == self_;
        auto ops = selection_operands(shares[0], shares[1], prepared_.indicator_share.get(j),
                                      is_owner, is_owner && prepared_.sigma.get(j));
        batches.push_back(AndBatch{select_tag(owner, j + 1), {std::move(ops.first)},
                                   {std::move(ops.second)}});
      }
    }

    auto products = co_await ring_and(ctx, "select", std::move(batches), rng_);

    wires_ = WireShares(circuit_.wire_count(), s());
    std::size_t batch = 0;
    for (PartyId owner : kParties) {
      const WireRange r = circuit_.party_input_range(owner.index());
      std::vector<BitString> lanes(r.size(), BitString(s()));
      for (std::size_t j = 0; j < s(); ++j, ++batch) {
        const BitString x = products[batch][0] ^ copies_[owner.slot()][j][0];
        for (std::size_t i = 0; i < r.size(); ++i) lanes[i].set(j, x.get(i));
      }
      for (std::size_t i = 0; i < r.size(); ++i) wires_.set(r.first + i, std::move(lanes[i]));
    }
  }

  Task<void> commit_transcripts(PartyContext& ctx) {
    const WireRange all{1, circuit_.wire_count()};
    transcripts_.clear();
    for (std::size_t j = 0; j < s(); ++j) transcripts_.push_back(wires_.lane(j, all));
    if (dev_ != nullptr) dev_->on_transcripts(circuit_, transcripts_);

    std::array<ByteWriter, 3> out;
    for (std::size_t j = 1; j <= s(); ++j) {
      const BitString& t = transcripts_[j - 1];
      for (PartyId owner : kParties) {
        const WireRange r = circuit_.party_input_range(owner.index());
        commit(commitment_id(self_, CommitKind::InputSegment, j, owner.index()),
               t.slice(r.first - 1, r.size()), out);
      }
      const WireRange internal = circuit_.internal_range();
      commit(commitment_id(self_, CommitKind::InternalSegment, j),
             t.slice(internal.first - 1, internal.size()), out);
      const WireRange output = circuit_.output_range();
      commit(commitment_id(self_, CommitKind::OutputSegment, j),
             t.slice(output.first - 1, output.size()), out);
    }
    for (PartyId p : others()) ctx.send(p, "tcommit", out[p.slot()].take());

    Inbox inbox = co_await ctx.exchange("tcommit");

    for (PartyId committer : others()) {
      ByteReader r(inbox.take(committer, "tcommit"));
      for (std::size_t j = 1; j <= s(); ++j) {
        for (PartyId owner : kParties) {
          receive(r, commitment_id(committer, CommitKind::InputSegment, j, owner.index()),
                  width_of(owner));
        }
        receive(r, commitment_id(committer, CommitKind::InternalSegment, j),
                circuit_.internal_range().size());
        receive(r, commitment_id(committer, CommitKind::OutputSegment, j), circuit_.m());
      }
      r.expect_done();
    }
  }

  /// Every party reveals its share of each listed commitment to both others
  /// and runs the pairwise opening check.
  Task<void> open(PartyContext& ctx, std::string phase, EnvelopePlan plan) {
    for (const auto& entry : plan) {
      ByteWriter w;
      for (std::uint64_t id : entry.second) put_shares(w, id, book_.at(id).share);
      const Bytes payload = w.take();
      for (PartyId p : others()) ctx.send(p, entry.first, payload);
    }

    Inbox inbox = co_await ctx.exchange(phase);

    const std::uint64_t p = cfg_.params.field().modulus();
    for (const auto& entry : plan) {
      ByteReader from_next(inbox.take(self_.next(), entry.first));
      ByteReader from_prev(inbox.take(self_.prev(), entry.first));
      for (std::uint64_t id : entry.second) {
        const Held& held = book_.at(id);
        ShareTriple d;
        d[self_.slot()] = held.share;
        d[self_.next().slot()] = get_shares(from_next, id, held.share.size(), p);
        d[self_.prev().slot()] = get_shares(from_prev, id, held.share.size(), p);
        auto blocks = verify_opening(d[0], d[1], d[2]);
        if (!blocks) fail(abort_code::kCommitmentMismatch, phase, commitment_run(id), describe(id));
        try {
          opened_[id] = decode_value(ValueEncoding{std::move(*blocks), held.bits}, cfg_.params);
        } catch (const std::domain_error&) {
          fail(abort_code::kCommitmentMismatch, phase, commitment_run(id), describe(id));
        }
      }
      from_next.expect_done();
      from_prev.expect_done();
    }
  }

  const BitString& opened(PartyId committer, CommitKind kind, std::size_t run = 0,
                          std::size_t field = 0) const {
    return opened_.at(commitment_id(committer, kind, run, field));
  }

  Task<void> open_indicator(PartyContext& ctx) {
    std::vector<std::uint64_t> ids;
    for (PartyId committer : kParties) {
      ids.push_back(commitment_id(committer, CommitKind::IndicatorShare));
      ids.push_back(commitment_id(committer, CommitKind::RandomInput));
    }
    EnvelopePlan plan;
    plan.emplace_back("open-c", std::move(ids));
    co_await open(ctx, "open-c", std::move(plan));

    c_ = BitString(s());
    for (PartyId committer : kParties) {
      c_ ^= opened(committer, CommitKind::IndicatorShare);
      random_inputs_[committer.slot()] = opened(committer, CommitKind::RandomInput);
    }
    if (c_.popcount() == s()) fail(abort_code::kNoOutputRuns, "open-c", 0, "c is all ones");
  }

  Task<void> open_inputs(PartyContext& ctx) {
    EnvelopePlan plan;
    for (std::size_t j = 1; j <= s(); ++j) {
      std::vector<std::uint64_t> ids;
      if (verification(j)) {
        for (PartyId owner : kParties) {
          for (PartyId committer : kParties) {
            if (committer == owner) continue;
            ids.push_back(commitment_id(committer, CommitKind::InputSegment, j, owner.index()));
          }
        }
      }
      plan.emplace_back("open-input:" + std::to_string(j), std::move(ids));
    }
    co_await open(ctx, "open-input", std::move(plan));

    if (dev_ != nullptr) co_return;
    const WireRange mine = circuit_.party_input_range(self_.index());
    for (std::size_t j = 1; j <= s(); ++j) {
      if (!verification(j)) continue;
      BitString slice = transcripts_[j - 1].slice(mine.first - 1, mine.size());
      for (PartyId committer : others()) {
        slice ^= opened(committer, CommitKind::InputSegment, j, self_.index());
      }
      if (slice != prepared_.random_input) {
        fail(abort_code::kRandomInputCheck, "open-input", j, "own input is not the random input");
      }
    }
  }

  Task<void> open_internals(PartyContext& ctx) {
    EnvelopePlan plan;
    for (std::size_t j = 1; j <= s(); ++j) {
      std::vector<std::uint64_t> ids;
      if (verification(j)) {
        for (PartyId committer : kParties) {
          ids.push_back(commitment_id(committer, CommitKind::InputSegment, j, committer.index()));
          ids.push_back(commitment_id(committer, CommitKind::InternalSegment, j));
        }
      }
      plan.emplace_back("open-internal:" + std::to_string(j), std::move(ids));
    }
    co_await open(ctx, "open-internal", std::move(plan));

    for (std::size_t j = 1; j <= s(); ++j) {
      if (!verification(j)) continue;
      for (PartyId owner : kParties) {
        BitString slice(width_of(owner));
        for (PartyId committer : kParties) {
          slice ^= opened(committer, CommitKind::InputSegment, j, owner.index());
        }
        if (slice != random_inputs_[owner.slot()]) {
          fail(abort_code::kRandomInputCheck, "open-internal", j,
               owner.name() + " input is not its random input");
        }
      }
    }
  }

  Task<BitString> open_outputs(PartyContext& ctx) {
    EnvelopePlan plan;
    for (std::size_t j = 1; j <= s(); ++j) {
      std::vector<std::uint64_t> ids;
      for (PartyId committer : kParties) {
        ids.push_back(commitment_id(committer, CommitKind::OutputSegment, j));
      }
      plan.emplace_back("open-output:" + std::to_string(j), std::move(ids));
    }
    co_await open(ctx, "open-output", std::move(plan));

    for (std::size_t j = 1; j <= s(); ++j) {
      if (verification(j)) check_circuit(j);
    }
    std::optional<BitString> y;
    for (std::size_t j = 1; j <= s(); ++j) {
      if (verification(j)) continue;
      BitString yj(circuit_.m());
      for (PartyId committer : kParties) yj ^= opened(committer, CommitKind::OutputSegment, j);
      if (!y) {
        y = std::move(yj);
      } else if (yj != *y) {
        fail(abort_code::kOutputMismatch, "open-output", j, "output differs from earlier runs");
      }
    }
    co_return std::move(*y);
  }

  void check_circuit(std::size_t j) const {
    BitString t;
    for (PartyId owner : kParties) {
      BitString slice(width_of(owner));
      for (PartyId committer : kParties) {
        slice ^= opened(committer, CommitKind::InputSegment, j, owner.index());
      }
      t.append(slice);
    }
    BitString internal(circuit_.internal_range().size());
    BitString output(circuit_.m());
    for (PartyId committer : kParties) {
      internal ^= opened(committer, CommitKind::InternalSegment, j);
      output ^= opened(committer, CommitKind::OutputSegment, j);
    }
    t.append(internal);
    t.append(output);
    for (const Gate& g : circuit_.gates()) {
      const bool a = t.get(g.a - 1);
      const bool b = t.get(g.b - 1);
      const bool want = g.op == GateOp::And ? (a && b) : (a != b);
      if (t.get(g.out - 1) != want) {
        fail(abort_code::kCircuitCheck, "open-output", j,
             "wire " + std::to_string(g.out) + " does not match its gate");
      }
    }
  }

  const Circuit& circuit_;
  const MaliciousConfig& cfg_;
  PartyId self_;
  BitString input_;
  Rng& rng_;
  MaliciousAdversary* dev_;

  PreparedInput prepared_;
  /// copies_[owner][j] = this party's shares of (first, second) of I_owner,j.
  std::array<std::vector<std::array<BitString, 2>>, 3> copies_;
  WireShares wires_;
  std::vector<BitString> transcripts_;
  std::map<std::uint64_t, Held> book_;
  std::map<std::uint64_t, BitString> opened_;
  BitString c_;
  std::array<BitString, 3> random_inputs_;
};

}  // namespace

MaliciousResult run_malicious(const Circuit& circuit, const std::array<BitString, 3>& inputs,
                              std::uint64_t seed, const MaliciousConfig& config,
                              MaliciousAdversary* adversary) {
  if (config.s == 0) throw std::invalid_argument("s must be at least 1");
  check_inputs(circuit, inputs);
  if (config.forced_indicator) {
    for (const auto& share : *config.forced_indicator) {
      if (share.size() != config.s) throw std::invalid_argument("indicator share must have s bits");
    }
  }

  std::array<Rng, 3> rngs{Rng(derive_seed(seed, "party:1")), Rng(derive_seed(seed, "party:2")),
                          Rng(derive_seed(seed, "party:3"))};
  std::array<std::unique_ptr<MaliciousParty>, 3> parties;
  for (PartyId p : kParties) {
    MaliciousAdversary* deviation =
        adversary != nullptr && adversary->corrupted() == p ? adversary : nullptr;
    parties[p.slot()] = std::make_unique<MaliciousParty>(circuit, config, p, inputs[p.slot()],
                                                         rngs[p.slot()], deviation);
  }
  std::array<PartyProgram, 3> programs;
  for (std::size_t slot = 0; slot < 3; ++slot) {
    programs[slot] = [&parties, slot](PartyContext& ctx) { return parties[slot]->run(ctx); };
  }

  MaliciousResult result{run_parties(programs, adversary, RunOptions{config.trace}),
                         BitString(config.s), std::nullopt, std::nullopt};
  for (const auto& party : parties) {
    if (party->prepared().indicator_share.size() == config.s) {
      result.indicator ^= party->prepared().indicator_share;
    }
  }
  if (config.keep_state) {
    result.lanes = std::array<WireShares, 3>{parties[0]->lanes(), parties[1]->lanes(),
                                             parties[2]->lanes()};
    result.prepared = std::array<PreparedInput, 3>{parties[0]->prepared(), parties[1]->prepared(),
                                                   parties[2]->prepared()};
  }
  return result;
}

}  // namespace trio
