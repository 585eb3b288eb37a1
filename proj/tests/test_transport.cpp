#include "doctest.h"

#include "trio/codec.hpp"
#include "trio/transport.hpp"

using namespace trio;

namespace {

// Each party sends one byte (its index) to its successor, twice.
Task<BitString> ring_program(PartyContext& ctx) {
  BitString seen;
  for (int r = 0; r < 2; ++r) {
    ctx.send(ctx.self().next(), "ring", Bytes{static_cast<std::uint8_t>(ctx.self().index())});
    const Inbox in = co_await ctx.exchange("ring:" + std::to_string(r), {ctx.self().prev()});
    const Bytes& got = in.take(ctx.self().prev(), "ring");
    seen.append(BitString(1, got.at(0) == ctx.self().prev().index()));
  }
  co_return seen;
}

std::array<PartyProgram, 3> all(PartyProgram p) { return {p, p, p}; }

class FlipFirstByte : public Interposer {
 public:
  using Interposer::Interposer;
  void tamper(Envelope& env) override {
    env.payload.at(0) ^= 0xff;
    env.from = env.to;  // routing rewrites are ignored
  }
};

class HaltAt : public Interposer {
 public:
  HaltAt(PartyId p, std::string phase) : Interposer(p), phase_(std::move(phase)) {}
  bool halt_before(std::string_view phase) override { return phase == phase_; }

 private:
  std::string phase_;
};

}  // namespace

TEST_CASE("ring function") {
  CHECK(h(1) == PartyId(1));
  CHECK(h(3) == PartyId(3));
  CHECK(h(4) == PartyId(1));
  CHECK(h(8) == PartyId(2));
  CHECK_THROWS_AS(h(0), std::out_of_range);
  for (PartyId p : kParties) {
    CHECK(p.next() == h(p.index() + 1));
    CHECK(p.prev() == h(p.index() + 2));
    CHECK(p.next().prev() == p);
  }
  CHECK_THROWS_AS(PartyId(4), std::out_of_range);
}

TEST_CASE("ring messages arrive in lockstep rounds") {
  const RunResult r = run_parties(all(ring_program), nullptr, {true});
  for (PartyId p : kParties) {
    REQUIRE(r.accepted(p));
    CHECK(std::get<BitString>(r.outcome(p)).to_string() == "11");
    CHECK(r.metrics.bytes(p, p.next()) == 2);
    CHECK(r.metrics.bytes(p, p.prev()) == 0);
  }
  CHECK(r.metrics.rounds == 2);
  CHECK(r.metrics.total_bytes() == 6);
  REQUIRE(r.trace.size() == 6);
  CHECK(r.trace[0] == "1 1 2 ring 01");
  CHECK(r.trace[5] == "2 3 1 ring 03");
}

TEST_CASE("tampering changes content but not routing or metrics") {
  FlipFirstByte adv(PartyId(2));
  const RunResult clean = run_parties(all(ring_program));
  const RunResult r = run_parties(all(ring_program), &adv, {true});
  CHECK(r.metrics == clean.metrics);
  CHECK(std::get<BitString>(r.outcome(PartyId(3))).to_string() == "00");
  CHECK(std::get<BitString>(r.outcome(PartyId(1))).to_string() == "11");
  CHECK(r.trace[1] == "1 2 3 ring fd");
}

TEST_CASE("rounds without traffic are not counted") {
  auto quiet = [](PartyContext& ctx) -> Task<BitString> {
    co_await ctx.exchange("idle", {});
    co_return BitString();
  };
  const RunResult r = run_parties(all(quiet));
  for (PartyId p : kParties) CHECK(r.accepted(p));
  CHECK(r.metrics.rounds == 0);
}

TEST_CASE("missing sender aborts with deadlock") {
  auto program = [](PartyContext& ctx) -> Task<BitString> {
    if (ctx.self() != PartyId(1)) ctx.send(ctx.self().next(), "x", Bytes{1});
    co_await ctx.exchange("step", {ctx.self().prev()});
    co_return BitString(1, true);
  };
  const RunResult r = run_parties(all(program));
  CHECK(r.accepted(PartyId(1)));
  CHECK(r.accepted(PartyId(3)));
  REQUIRE_FALSE(r.accepted(PartyId(2)));
  const Abort& a = std::get<Abort>(r.outcome(PartyId(2)));
  CHECK(a.code == "deadlock");
  CHECK(a.phase == "step");
}

TEST_CASE("a halted party makes its peers deadlock") {
  HaltAt adv(PartyId(1), "ring:1");
  const RunResult r = run_parties(all(ring_program), &adv);
  CHECK(std::get<Abort>(r.outcome(PartyId(1))).code == "halted");
  CHECK(std::get<Abort>(r.outcome(PartyId(2))).code == "deadlock");
  CHECK(r.accepted(PartyId(3)));
}

TEST_CASE("missing tag and malformed payload become aborts") {
  auto program = [](PartyContext& ctx) -> Task<BitString> {
    ctx.send(ctx.self().next(), "bits", Bytes{1, 2});
    const Inbox in = co_await ctx.exchange("read", {ctx.self().prev()});
    if (ctx.self() == PartyId(1)) in.take(ctx.self().next(), "bits");
    co_return unpack_bits(in.take(ctx.self().prev(), "bits"), 3);
  };
  const RunResult r = run_parties(all(program));
  CHECK(std::get<Abort>(r.outcome(PartyId(1))).code == "missing-message");
  const Abort& m = std::get<Abort>(r.outcome(PartyId(2)));
  CHECK(m.code == "malformed");
  CHECK(m.phase == "read");
  CHECK(m.to_string().rfind("malformed phase=read", 0) == 0);
}

TEST_CASE("phase mismatch is a harness error") {
  auto program = [](PartyContext& ctx) -> Task<BitString> {
    co_await ctx.exchange(ctx.self() == PartyId(3) ? "b" : "a", {});
    co_return BitString();
  };
  CHECK_THROWS_AS(run_parties(all(program)), HarnessError);
  auto self_send = [](PartyContext& ctx) -> Task<BitString> {
    ctx.send(ctx.self(), "loop", Bytes{});
    co_await ctx.exchange("a", {});
    co_return BitString();
  };
  CHECK_THROWS_AS(run_parties(all(self_send)), HarnessError);
}

TEST_CASE("runs are deterministic") {
  const RunResult a = run_parties(all(ring_program), nullptr, {true});
  const RunResult b = run_parties(all(ring_program), nullptr, {true});
  CHECK(a.trace == b.trace);
  CHECK(a.metrics == b.metrics);
}

TEST_CASE("byte codec round trip and length checks") {
  ByteWriter w;
  w.u64(0x0102030405060708ULL);
  w.u32(7);
  w.bits(BitString::from_string("101"));
  const Bytes data = w.take();
  CHECK(data.size() == 13);
  CHECK(data[0] == 0x08);
  ByteReader r(data);
  CHECK(r.u64() == 0x0102030405060708ULL);
  CHECK(r.u32() == 7);
  CHECK(r.bits(3).to_string() == "101");
  CHECK(r.done());
  ByteReader short_reader(data);
  short_reader.u64();
  CHECK_THROWS_AS(short_reader.u64(), MalformedMessage);
  ByteReader trailing(data);
  trailing.u64();
  CHECK_THROWS_AS(trailing.expect_done(), MalformedMessage);
  CHECK_THROWS_AS(unpack_bits(data, 3), MalformedMessage);
}
