#include "doctest.h"

#include <sstream>

#include "oracles.hpp"
#include "trio/circuit_gen.hpp"
#include "trio/codec.hpp"
#include "trio/malicious.hpp"

using namespace trio;

namespace {

BitString b(const char* s) { return BitString::from_string(s); }

std::array<BitString, 3> single_bits(int x) {
  return {BitString(1, x & 4), BitString(1, x & 2), BitString(1, x & 1)};
}

MaliciousConfig with_s(std::size_t s) {
  MaliciousConfig cfg;
  cfg.s = s;
  return cfg;
}

std::array<BitString, 3> forced(const char* c1, const char* c2, const char* c3) {
  return {b(c1), b(c2), b(c3)};
}

class Truncate : public MaliciousAdversary {
 public:
  Truncate(PartyId p, std::string tag) : MaliciousAdversary(p), tag_(std::move(tag)) {}
  void tamper(Envelope& env) override {
    if (env.tag == tag_ && !env.payload.empty()) env.payload.pop_back();
  }

 private:
  std::string tag_;
};

class Halt : public MaliciousAdversary {
 public:
  Halt(PartyId p, std::string phase) : MaliciousAdversary(p), phase_(std::move(phase)) {}
  bool halt_before(std::string_view phase) override { return phase == phase_; }

 private:
  std::string phase_;
};

}  // namespace

TEST_CASE("honest malicious run matches plaintext") {
  const Circuit c = gen::majority();
  int aborted = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (int x = 0; x < 8; ++x) {
      const auto in = single_bits(x);
      auto res = run_malicious(c, in, seed * 8 + x, with_s(8));
      if (res.indicator.popcount() == 8) {
        ++aborted;
        continue;
      }
      for (PartyId p : kParties) {
        REQUIRE(res.run.accepted(p));
        CHECK(std::get<BitString>(res.run.outcome(p)) == eval_plaintext(c, join_inputs(in)));
      }
      CHECK(res.run.metrics.rounds == c.and_depth() + 7);
    }
  }
  CHECK(aborted < 5);
}

TEST_CASE("input preparation draws the random input, then sigma, then the indicator share") {
  Rng rng(17);
  const BitString x0 = b("1100101");
  const PreparedInput prep = prepare_input(x0, 5, rng);
  Rng replay(17);
  CHECK(prep.true_input == x0);
  CHECK(prep.random_input == replay.bits(7));
  CHECK(prep.sigma == replay.bits(5));
  CHECK(prep.indicator_share == replay.bits(5));
  REQUIRE(prep.copies.size() == 5);
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(prep.copies[j][0] == (prep.sigma.get(j) ? prep.random_input : x0));
    CHECK(prep.copies[j][1] == (prep.sigma.get(j) ? x0 : prep.random_input));
  }
  CHECK(arrange_copy(b("10"), b("01"), false) == std::array<BitString, 2>{b("10"), b("01")});
  CHECK(arrange_copy(b("10"), b("01"), true) == std::array<BitString, 2>{b("01"), b("10")});
}

TEST_CASE("selection operands") {
  const auto [t, c] = selection_operands(b("101"), b("011"), true, false, true);
  CHECK(t.to_string() == "110");
  CHECK(c.to_string() == "111");
  const auto [t2, c2] = selection_operands(b("101"), b("011"), true, true, true);
  CHECK(t2.to_string() == "110");
  CHECK(c2.to_string() == "000");
  CHECK(selection_operands(BitString(), BitString(), true, true, false).second.empty());
}

TEST_CASE("selection truth table over x0, x1, c and sigma") {
  Rng rng(31);
  int cases = 0;
  for (int v = 0; v < 16; ++v) {
    const BitString x0(1, v & 1);
    const BitString x1(1, v & 2);
    const bool c = v & 4;
    const bool sigma = v & 8;
    for (PartyId owner : kParties) {
      for (int rep = 0; rep < 8; ++rep) {
        const auto copy = arrange_copy(x0, x1, sigma);
        const std::array<XorSharing, 2> dealt{xor_share(copy[0], rng), xor_share(copy[1], rng)};
        const bool c1 = rng.bit();
        const bool c2 = rng.bit();
        const std::array<bool, 3> cs{c1, c2, static_cast<bool>(c ^ c1 ^ c2)};
        const std::array<BitString, 3> r{rng.bits(1), rng.bits(1), rng.bits(1)};
        const XorSharing out = select_shares(dealt, cs, sigma, owner, r);
        REQUIRE(xor_reconstruct(out) == oracle::selected(x0, x1, c));
      }
    }
    ++cases;
  }
  CHECK(cases == 16);
}

TEST_CASE("selection on random multi-bit inputs") {
  Rng rng(32);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t len = 1 + rng.below(40);
    const BitString x0 = rng.bits(len);
    const BitString x1 = rng.bits(len);
    const bool c = rng.bit();
    const bool sigma = rng.bit();
    const auto copy = arrange_copy(x0, x1, sigma);
    const std::array<XorSharing, 2> dealt{xor_share(copy[0], rng), xor_share(copy[1], rng)};
    const bool c1 = rng.bit();
    const bool c2 = rng.bit();
    const std::array<bool, 3> cs{c1, c2, static_cast<bool>(c ^ c1 ^ c2)};
    const std::array<BitString, 3> r{rng.bits(len), rng.bits(len), rng.bits(len)};
    const XorSharing out = select_shares(dealt, cs, sigma, h(1 + rng.below(3)), r);
    REQUIRE(xor_reconstruct(out) == oracle::selected(x0, x1, c));
  }
}

TEST_CASE("gate evaluation runs independent lanes side by side") {
  const Circuit c = gen::and_gate();
  Rng deal(40);
  const XorSharing a = xor_share(b("0011"), deal);
  const XorSharing bb = xor_share(b("0101"), deal);
  std::array<WireShares, 3> wires;
  std::array<Rng, 3> rngs{Rng(1), Rng(2), Rng(3)};
  std::array<PartyProgram, 3> programs;
  for (PartyId p : kParties) {
    wires[p.slot()] = WireShares(c.wire_count(), 4);
    wires[p.slot()].set(1, a[p]);
    wires[p.slot()].set(2, bb[p]);
    programs[p.slot()] = [&, p](PartyContext& ctx) -> Task<BitString> {
      co_await evaluate_gates(ctx, c, wires[p.slot()], rngs[p.slot()]);
      co_return BitString();
    };
  }
  const RunResult r = run_parties(programs);
  CHECK(r.metrics.rounds == 1);
  const BitString z = wires[0].get(3) ^ wires[1].get(3) ^ wires[2].get(3);
  CHECK(z.to_string() == "0001");
  for (std::size_t j = 0; j < 4; ++j) {
    const BitString lane = wires[0].lane(j, {3, 3}) ^ wires[1].lane(j, {3, 3}) ^
                           wires[2].lane(j, {3, 3});
    CHECK(lane.get(0) == (j == 3));
  }
}

TEST_CASE("verification runs evaluate the random inputs, output runs the true ones") {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const Circuit c = gen::random_circuit(rng, 7, 40, 3, gen::even_bounds(7));
    const BitString x = rng.bits(7);
    MaliciousConfig cfg = with_s(6);
    cfg.keep_state = true;
    const auto res = run_malicious(c, oracle::split(c, x), rng(), cfg);
    REQUIRE(res.lanes.has_value());
    REQUIRE(res.prepared.has_value());
    BitString x1;
    for (const auto& p : *res.prepared) x1.append(p.random_input);
    for (std::size_t j = 0; j < 6; ++j) {
      BitString in = (*res.lanes)[0].lane(j, c.input_range());
      in ^= (*res.lanes)[1].lane(j, c.input_range());
      in ^= (*res.lanes)[2].lane(j, c.input_range());
      REQUIRE(in == (res.indicator.get(j) ? x1 : x));
      BitString out = (*res.lanes)[0].lane(j, c.output_range());
      out ^= (*res.lanes)[1].lane(j, c.output_range());
      out ^= (*res.lanes)[2].lane(j, c.output_range());
      REQUIRE(out == eval_plaintext(c, in));
    }
  }
}

TEST_CASE("single run: indicator 1 aborts, indicator 0 evaluates") {
  const Circuit c = gen::majority();
  for (int x = 0; x < 8; ++x) {
    MaliciousConfig cfg = with_s(1);
    cfg.forced_indicator = forced("1", "1", "1");
    const auto bad = run_malicious(c, single_bits(x), x, cfg);
    CHECK(bad.indicator.to_string() == "1");
    for (PartyId p : kParties) {
      REQUIRE_FALSE(bad.run.accepted(p));
      CHECK(std::get<Abort>(bad.run.outcome(p)).code == abort_code::kNoOutputRuns);
    }
    cfg.forced_indicator = forced("1", "0", "1");
    const auto good = run_malicious(c, single_bits(x), x, cfg);
    CHECK(good.indicator.to_string() == "0");
    for (PartyId p : kParties) {
      REQUIRE(good.run.accepted(p));
      CHECK(std::get<BitString>(good.run.outcome(p)) == eval_plaintext(c, join_inputs(single_bits(x))));
    }
  }
}

TEST_CASE("commitments precede every opening in the transcript") {
  const Circuit c = gen::by_name("random:6:30:2:5");
  MaliciousConfig cfg = with_s(4);
  cfg.trace = true;
  cfg.forced_indicator = forced("0101", "0000", "0000");
  const auto res = run_malicious(c, oracle::split(c, b("101100")), 3, cfg);
  REQUIRE(res.run.accepted(PartyId(1)));
  std::map<std::string, std::uint64_t> first_round;
  for (const auto& line : res.run.trace) {
    std::istringstream ls(line);
    std::uint64_t round;
    std::string from, to, tag;
    ls >> round >> from >> to >> tag;
    const std::string phase = tag.substr(0, tag.find(':'));
    if (!first_round.count(phase)) first_round[phase] = round;
  }
  const std::vector<std::string> order{"prep",   "select",     "and",           "tcommit",
                                       "open-c", "open-input", "open-internal", "open-output"};
  for (std::size_t i = 0; i < order.size(); ++i) {
    REQUIRE(first_round.count(order[i]));
    if (i > 0) CHECK(first_round[order[i - 1]] < first_round[order[i]]);
  }
  CHECK(res.run.metrics.rounds == c.and_depth() + 7);
}

TEST_CASE("random circuits at s = 8") {
  Rng rng(42);
  int skipped = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng.below(10);
    const std::size_t q = 1 + rng.below(60);
    const Circuit c = gen::random_circuit(rng, n, q, 1 + rng.below(std::min<std::size_t>(q, 4)),
                                          gen::even_bounds(n));
    const BitString x = rng.bits(n);
    const auto res = run_malicious(c, oracle::split(c, x), rng(), with_s(8));
    if (res.indicator.popcount() == 8) {
      ++skipped;
      continue;
    }
    for (PartyId p : kParties) {
      REQUIRE(res.run.accepted(p));
      REQUIRE(oracle::to_vec(std::get<BitString>(res.run.outcome(p))) ==
              oracle::eval(c, oracle::to_vec(x)));
    }
    REQUIRE(res.run.metrics.rounds == oracle::and_depth(c) + 7);
  }
  CHECK(skipped <= 3);
}

TEST_CASE("commitment ids pack committer, kind, run and field") {
  const std::uint64_t id = commitment_id(PartyId(3), CommitKind::InputSegment, 7, 2);
  CHECK(id == ((3ULL << 56) | (3ULL << 48) | (7ULL << 16) | 2ULL));
  CHECK(commitment_committer(id) == PartyId(3));
  CHECK(commitment_kind(id) == CommitKind::InputSegment);
  CHECK(commitment_run(id) == 7);
  CHECK(commitment_id(PartyId(1), CommitKind::RandomInput) == ((1ULL << 56) | (1ULL << 48)));
}

TEST_CASE("truncated payloads abort as malformed") {
  Truncate adv(PartyId(1), "and:1");
  const auto res = run_malicious(gen::majority(), single_bits(5), 1, with_s(4), &adv);
  const Abort& a = std::get<Abort>(res.run.outcome(PartyId(2)));
  CHECK(a.code == "malformed");
  CHECK(a.phase == "and:1");
  CHECK_FALSE(res.run.accepted(PartyId(3)));

  Truncate prep(PartyId(2), "prep");
  const auto r2 = run_malicious(gen::majority(), single_bits(5), 1, with_s(4), &prep);
  CHECK(std::get<Abort>(r2.run.outcome(PartyId(1))).code == "malformed");
  CHECK(std::get<Abort>(r2.run.outcome(PartyId(3))).code == "malformed");
}

TEST_CASE("a silent party leaves the others deadlocked") {
  Halt adv(PartyId(2), "tcommit");
  const auto res = run_malicious(gen::majority(), single_bits(3), 2, with_s(4), &adv);
  CHECK(std::get<Abort>(res.run.outcome(PartyId(2))).code == "halted");
  for (PartyId p : {PartyId(1), PartyId(3)}) {
    const Abort& a = std::get<Abort>(res.run.outcome(p));
    CHECK(a.code == "deadlock");
    CHECK(a.phase == "tcommit");
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(run_malicious(gen::and_gate(), {b("1"), b("1"), BitString()}, 1, with_s(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_malicious(gen::and_gate(), {b("11"), b("1"), BitString()}, 1, with_s(2)),
                  std::invalid_argument);
}
