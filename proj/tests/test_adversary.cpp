#include "doctest.h"

#include <cmath>
#include <set>

#include "trio/adversary.hpp"
#include "trio/circuit_gen.hpp"

using namespace trio;

namespace {

BitString b(const char* s) { return BitString::from_string(s); }

RunResult outcomes(Outcome o1, Outcome o2, Outcome o3) {
  return RunResult{{std::move(o1), std::move(o2), std::move(o3)}, {}, {}};
}

Abort abort_with(const char* code) { return Abort{code, "x", std::nullopt, ""}; }

}  // namespace

TEST_CASE("catalog lists every strategy once") {
  const auto& cat = strategy_catalog();
  CHECK(cat.size() >= 5);
  std::set<std::string> names;
  for (const auto& s : cat) {
    names.insert(s.name);
    CHECK_FALSE(s.summary.empty());
    CHECK(&find_strategy(s.name) == &s);
  }
  CHECK(names.size() == cat.size());
  for (const char* want : {"null", "guess-c", "single-run-tamper", "true-input-swap",
                           "commitment-equivocation", "inconsistent-input-sharing"}) {
    CHECK(names.count(want) == 1);
  }
  CHECK_THROWS_AS(find_strategy("bogus"), std::invalid_argument);
}

TEST_CASE("classification") {
  const BitString one = b("1");
  const BitString zero = b("0");
  const PartyId p1(1);

  auto t = classify(outcomes(zero, one, one), p1, one);
  CHECK(t.kind == TrialClass::Clean);
  CHECK_FALSE(t.disagreement);

  t = classify(outcomes(one, zero, one), p1, one);
  CHECK(t.kind == TrialClass::Win);
  CHECK(t.disagreement);

  t = classify(outcomes(one, zero, zero), p1, one);
  CHECK(t.kind == TrialClass::Win);
  CHECK_FALSE(t.disagreement);

  t = classify(outcomes(one, abort_with("circuit-check"), abort_with("output-mismatch")), p1, one);
  CHECK(t.kind == TrialClass::Abort);
  CHECK(t.abort_code == "circuit-check");

  t = classify(outcomes(abort_with("halted"), one, abort_with("deadlock")), p1, one);
  CHECK(t.kind == TrialClass::Abort);
  CHECK(t.abort_code == "deadlock");

  t = classify(outcomes(abort_with("deadlock"), one, zero), PartyId(3), one);
  CHECK(t.kind == TrialClass::Abort);
  CHECK(t.abort_code == "deadlock");
}

TEST_CASE("report line format") {
  TrialReport r;
  r.strategy = "guess-c";
  r.s = 4;
  r.trials = 10;
  r.wins = 1;
  r.clean = 2;
  r.aborts = {{"circuit-check", 6}, {"no-output-runs", 1}};
  CHECK(r.abort_total() == 7);
  CHECK(r.win_rate() == doctest::Approx(0.1));
  CHECK(r.to_line() == "guess-c 4 10 1 2 abort:circuit-check=6 abort:no-output-runs=1");
  TrialReport empty;
  empty.strategy = "null";
  CHECK(empty.win_rate() == 0.0);
  CHECK(empty.to_line() == "null 0 0 0 0");
}

TEST_CASE("honest runs against the null strategy") {
  const TrialReport r = estimate("null", gen::majority(), 4, 300, 1);
  CHECK(r.trials == 300);
  CHECK(r.wins == 0);
  CHECK(r.disagreements == 0);
  CHECK(r.clean + r.abort_total() == 300);
  for (const auto& [code, n] : r.aborts) CHECK(code == "no-output-runs");
}

TEST_CASE("every trial lands in exactly one bucket") {
  for (const auto& info : strategy_catalog()) {
    const TrialReport r = estimate(info.name, gen::majority(), 3, 200, 7);
    INFO(info.name);
    CHECK(r.trials == 200);
    CHECK(r.wins + r.clean + r.abort_total() == 200);
    CHECK(r.strategy == info.name);
  }
}

TEST_CASE("guess-indicator guesses never use all ones") {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    GuessIndicator g(PartyId(1), 2, rng);
    REQUIRE(g.guess().size() == 2);
    REQUIRE(g.guess().popcount() < 2);
  }
  CHECK(GuessIndicator(PartyId(2), b("010")).guess() == b("010"));
}

TEST_CASE("guess-indicator wins exactly when its guess equals c") {
  const Circuit c = gen::majority();
  const std::array<BitString, 3> in{b("1"), b("0"), b("1")};
  const BitString expected = eval_plaintext(c, b("101"));
  for (std::uint64_t cv = 0; cv < 8; ++cv) {
    for (std::uint64_t gv = 0; gv < 7; ++gv) {
      MaliciousConfig cfg;
      cfg.s = 3;
      cfg.forced_indicator = std::array<BitString, 3>{BitString::from_word(cv, 3), BitString(3),
                                                      BitString(3)};
      GuessIndicator adv(PartyId(1), BitString::from_word(gv, 3));
      const auto res = run_malicious(c, in, cv * 8 + gv, cfg, &adv);
      const TrialOutcome t = classify(res.run, PartyId(1), expected);
      INFO("c=" << cv << " guess=" << gv);
      CHECK((t.kind == TrialClass::Win) == (cv == gv));
      CHECK_FALSE(t.disagreement);
    }
  }
}

TEST_CASE("enumerated guess-indicator probability is 2^-s") {
  const Circuit c = gen::majority();
  const std::array<BitString, 3> in{b("0"), b("1"), b("1")};
  for (std::size_t s : {1u, 2u}) {
    const Enumeration e = enumerate_guess_indicator(c, s, in, 5);
    const std::size_t states = std::size_t{1} << s;
    CHECK(e.cases == states * (states - 1));
    CHECK(e.wins == states - 1);
    CHECK(std::abs(e.probability - std::ldexp(1.0, -static_cast<int>(s))) < 1e-12);
  }
}

TEST_CASE("single-run tampering never wins, whatever c") {
  const Circuit c = gen::by_name("random:6:24:2:3");
  const BitString x = b("110010");
  const BitString expected = eval_plaintext(c, x);
  const std::array<BitString, 3> in{x.slice(0, 2), x.slice(2, 2), x.slice(4, 2)};
  const auto& tamper = find_strategy("single-run-tamper");
  std::size_t clean = 0;
  for (std::uint64_t cv = 0; cv < 8; ++cv) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      MaliciousConfig cfg;
      cfg.s = 3;
      cfg.forced_indicator = std::array<BitString, 3>{BitString(3), BitString::from_word(cv, 3),
                                                      BitString(3)};
      auto adv = tamper.make(PartyId(1), seed, cfg);
      const auto res = run_malicious(c, in, seed, cfg, adv.get());
      const TrialOutcome t = classify(res.run, PartyId(1), expected);
      REQUIRE(t.kind != TrialClass::Win);
      REQUIRE_FALSE(t.disagreement);
      if (t.kind == TrialClass::Clean) ++clean;
    }
  }
  // A flip in an output run is invisible only if it misses the output.
  CHECK(clean < 8 * 40);
}

TEST_CASE("commitment equivocation always aborts on a commitment check") {
  const TrialReport r = estimate("commitment-equivocation", gen::majority(), 4, 300, 9);
  CHECK(r.wins == 0);
  CHECK(r.clean == 0);
  CHECK(r.disagreements == 0);
  std::size_t mismatch = r.aborts.count(abort_code::kCommitmentMismatch)
                             ? r.aborts.at(abort_code::kCommitmentMismatch)
                             : 0;
  std::size_t no_runs = r.aborts.count(abort_code::kNoOutputRuns)
                            ? r.aborts.at(abort_code::kNoOutputRuns)
                            : 0;
  CHECK(mismatch + no_runs == 300);
}

TEST_CASE("input deviations are caught by the random-input check") {
  for (const char* name : {"true-input-swap", "inconsistent-input-sharing"}) {
    const TrialReport r = estimate(name, gen::majority(), 4, 300, 11);
    INFO(name);
    CHECK(r.wins == 0);
    CHECK(r.disagreements == 0);
    CHECK(r.aborts.count(abort_code::kRandomInputCheck) == 1);
  }
}

TEST_CASE("estimates are reproducible") {
  EstimateOptions opts;
  opts.inputs = std::array<BitString, 3>{b("1"), b("1"), b("0")};
  opts.corrupted = PartyId(2);
  const TrialReport a = estimate("guess-c", gen::majority(), 2, 200, 4, opts);
  const TrialReport again = estimate("guess-c", gen::majority(), 2, 200, 4, opts);
  CHECK(a == again);
  CHECK(a.wins > 0);
}
