#include "trio/semihonest.hpp"

#include <stdexcept>

#include "trio/codec.hpp"
#include "trio/sharing.hpp"

namespace trio {

WireShares::WireShares(std::size_t wires, std::size_t width)
    : width_(width), values_(wires), computed_(wires, false) {}

bool WireShares::has(std::size_t w) const {
  return w >= 1 && w <= values_.size() && computed_[w - 1];
}

const BitString& WireShares::get(std::size_t w) const {
  if (!has(w)) throw std::logic_error("no share for wire " + std::to_string(w));
  return values_[w - 1];
}

void WireShares::set(std::size_t w, BitString value) {
  if (w < 1 || w > values_.size()) throw std::out_of_range("wire " + std::to_string(w));
  if (value.size() != width_) throw std::length_error("wire share has the wrong width");
  values_[w - 1] = std::move(value);
  computed_[w - 1] = true;
}

void WireShares::flip(std::size_t w, std::size_t lane) {
  get(w);
  values_[w - 1].flip(lane);
}

BitString WireShares::lane(std::size_t j, WireRange r) const {
  BitString out(r.size());
  for (std::size_t w = r.first; w <= r.last; ++w) out.set(w - r.first, get(w).get(j));
  return out;
}

BitString and_share(const BitString& a_own, const BitString& b_own, const BitString& a_prev,
                    const BitString& b_prev, const BitString& r_own, const BitString& r_prev) {
  BitString out = a_own & b_own;
  out ^= a_own & b_prev;
  out ^= a_prev & b_own;
  out ^= r_own;
  out ^= r_prev;
  return out;
}

std::string and_phase(std::size_t depth) { return "and:" + std::to_string(depth); }

Task<std::vector<std::vector<BitString>>> ring_and(PartyContext& ctx, std::string phase,
                                                   std::vector<AndBatch> batches, Rng& rng) {
  const PartyId next = ctx.self().next();
  const PartyId prev = ctx.self().prev();
  std::vector<std::vector<BitString>> randomizers(batches.size());
  std::vector<std::size_t> payload_bits(batches.size(), 0);
  for (std::size_t k = 0; k < batches.size(); ++k) {
    const AndBatch& batch = batches[k];
    if (batch.a.size() != batch.b.size()) throw std::logic_error("AND batch operand count mismatch");
    BitString packed;
    for (std::size_t i = 0; i < batch.a.size(); ++i) {
      BitString r = rng.bits(batch.a[i].size());
      packed.append(batch.a[i]);
      packed.append(batch.b[i]);
      packed.append(r);
      randomizers[k].push_back(std::move(r));
    }
    payload_bits[k] = packed.size();
    ctx.send(next, batch.tag, to_bytes(packed));
  }

  std::vector<PartyId> from{prev};
  Inbox inbox = co_await ctx.exchange(std::move(phase), std::move(from));

  std::vector<std::vector<BitString>> out(batches.size());
  for (std::size_t k = 0; k < batches.size(); ++k) {
    const AndBatch& batch = batches[k];
    const BitString got = unpack_bits(inbox.take(prev, batch.tag), payload_bits[k]);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < batch.a.size(); ++i) {
      const std::size_t w = batch.a[i].size();
      const BitString a_prev = got.slice(pos, w);
      const BitString b_prev = got.slice(pos + w, w);
      const BitString r_prev = got.slice(pos + 2 * w, w);
      pos += 3 * w;
      out[k].push_back(and_share(batch.a[i], batch.b[i], a_prev, b_prev, randomizers[k][i], r_prev));
    }
  }
  co_return out;
}

Task<void> evaluate_gates(PartyContext& ctx, const Circuit& circuit, WireShares& wires, Rng& rng) {
  const auto& layers = circuit.layers();
  for (std::size_t d = 0; d < layers.size(); ++d) {
    const GateLayer& layer = layers[d];
    if (!layer.ands.empty()) {
      AndBatch batch{and_phase(d), {}, {}};
      for (std::size_t g : layer.ands) {
        batch.a.push_back(wires.get(circuit.gate(g).a));
        batch.b.push_back(wires.get(circuit.gate(g).b));
      }
      std::vector<AndBatch> batches;
      batches.push_back(std::move(batch));
      auto products = co_await ring_and(ctx, and_phase(d), std::move(batches), rng);
      for (std::size_t i = 0; i < layer.ands.size(); ++i) {
        wires.set(layer.ands[i], std::move(products[0][i]));
      }
    }
    for (std::size_t g : layer.xors) {
      const Gate& gate = circuit.gate(g);
      wires.set(g, wires.get(gate.a) ^ wires.get(gate.b));
    }
  }
}

void check_inputs(const Circuit& circuit, const std::array<BitString, 3>& inputs) {
  for (PartyId p : kParties) {
    const std::size_t want = circuit.party_input_range(p.index()).size();
    if (inputs[p.slot()].size() != want) {
      throw std::invalid_argument(p.name() + " input has " +
                                  std::to_string(inputs[p.slot()].size()) + " bits, expected " +
                                  std::to_string(want));
    }
  }
}

BitString join_inputs(const std::array<BitString, 3>& inputs) {
  BitString x;
  for (const auto& part : inputs) x.append(part);
  return x;
}

namespace {

Task<BitString> semi_honest_party(PartyContext& ctx, const Circuit& circuit, BitString input,
                                  Rng& rng, WireShares& wires) {
  const PartyId self = ctx.self();
  const XorSharing mine = xor_share(input, rng);
  ctx.send(self.next(), "input-share", to_bytes(mine[self.next()]));
  ctx.send(self.prev(), "input-share", to_bytes(mine[self.prev()]));
  Inbox inbox = co_await ctx.exchange("input-share");

  for (PartyId owner : kParties) {
    const WireRange r = circuit.party_input_range(owner.index());
    const BitString share =
        owner == self ? mine[self] : unpack_bits(inbox.take(owner, "input-share"), r.size());
    for (std::size_t i = 0; i < r.size(); ++i) wires.set(r.first + i, BitString(1, share.get(i)));
  }

  co_await evaluate_gates(ctx, circuit, wires, rng);

  const WireRange out = circuit.output_range();
  BitString result = wires.lane(0, out);
  ctx.send(self.next(), "output", to_bytes(result));
  ctx.send(self.prev(), "output", to_bytes(result));
  inbox = co_await ctx.exchange("output");
  result ^= unpack_bits(inbox.take(self.next(), "output"), out.size());
  result ^= unpack_bits(inbox.take(self.prev(), "output"), out.size());
  co_return result;
}

}  // namespace

SemiHonestResult run_semi_honest(const Circuit& circuit, const std::array<BitString, 3>& inputs,
                                 std::uint64_t seed, Interposer* adversary,
                                 SemiHonestOptions options) {
  check_inputs(circuit, inputs);
  std::array<Rng, 3> rngs{Rng(derive_seed(seed, "party:1")), Rng(derive_seed(seed, "party:2")),
                          Rng(derive_seed(seed, "party:3"))};
  std::array<WireShares, 3> wires;
  for (auto& w : wires) w = WireShares(circuit.wire_count(), 1);

  std::array<PartyProgram, 3> programs;
  for (std::size_t slot = 0; slot < 3; ++slot) {
    programs[slot] = [&, slot](PartyContext& ctx) {
      return semi_honest_party(ctx, circuit, inputs[slot], rngs[slot], wires[slot]);
    };
  }
  SemiHonestResult result{run_parties(programs, adversary, RunOptions{options.trace}), std::nullopt};
  if (options.keep_shares) result.shares = std::move(wires);
  return result;
}

}  // namespace trio
