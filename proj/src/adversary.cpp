#include "trio/adversary.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "trio/codec.hpp"

namespace trio {

namespace {

BitString draw_guess(std::size_t s, Rng& rng) {
  while (true) {
    BitString g = rng.bits(s);
    if (g.popcount() != s) return g;
  }
}

/// Index of the random-input field in copy j of the owner's layout.
std::size_t random_field(const PreparedInput& own, std::size_t run) {
  return own.sigma.get(run - 1) ? 0 : 1;
}

class SingleRunTamper : public MaliciousAdversary {
 public:
  SingleRunTamper(PartyId corrupted, std::size_t s, Rng& rng)
      : MaliciousAdversary(corrupted), run_(rng.below(s) + 1), pick_(rng()) {}

  void on_transcripts(const Circuit& circuit, std::vector<BitString>& transcripts) override {
    WireRange target = circuit.internal_range();
    if (target.empty()) target = circuit.input_range();
    const std::size_t wire = target.first + pick_ % target.size();
    transcripts[run_ - 1].flip(wire - 1);
  }

 private:
  std::size_t run_;
  std::uint64_t pick_;
};

class TrueInputSwap : public MaliciousAdversary {
 public:
  using MaliciousAdversary::MaliciousAdversary;

  void on_select_operands(PartyId owner, std::size_t run, const PreparedInput& own,
                          std::array<BitString, 2>& copy_shares) override {
    if (owner != corrupted()) return;
    copy_shares[random_field(own, run)] ^= own.true_input ^ own.random_input;
  }
};

class CommitmentEquivocation : public MaliciousAdversary {
 public:
  CommitmentEquivocation(PartyId corrupted, std::uint64_t modulus)
      : MaliciousAdversary(corrupted), modulus_(modulus) {}

  void tamper(Envelope& env) override {
    const std::string_view tag = env.tag;
    if (!(tag.starts_with("open-input:") || tag.starts_with("open-internal:") ||
          tag.starts_with("open-output:"))) {
      return;
    }
    auto& bytes = env.payload;
    for (std::size_t pos = 0; pos + kShareRecordBytes <= bytes.size(); pos += kShareRecordBytes) {
      std::uint64_t id = 0;
      std::uint64_t share = 0;
      for (int i = 0; i < 8; ++i) id |= std::uint64_t{bytes[pos + i]} << (8 * i);
      for (int i = 0; i < 8; ++i) share |= std::uint64_t{bytes[pos + 12 + i]} << (8 * i);
      const CommitKind kind = commitment_kind(id);
      if (commitment_committer(id) != corrupted() ||
          !(kind == CommitKind::InputSegment || kind == CommitKind::InternalSegment ||
            kind == CommitKind::OutputSegment)) {
        continue;
      }
      share = (share + 1) % modulus_;
      for (int i = 0; i < 8; ++i) bytes[pos + 12 + i] = static_cast<std::uint8_t>(share >> (8 * i));
    }
  }

 private:
  std::uint64_t modulus_;
};

class InconsistentInputSharing : public MaliciousAdversary {
 public:
  using MaliciousAdversary::MaliciousAdversary;

  void on_deal(const PreparedInput& own, std::vector<std::array<XorSharing, 2>>& dealt) override {
    const PartyId next = corrupted().next();
    const PartyId prev = corrupted().prev();
    for (std::size_t j = 1; j <= dealt.size(); ++j) {
      XorSharing& field = dealt[j - 1][random_field(own, j)];
      field[prev] = field[next];
    }
  }
};

std::vector<StrategyInfo> build_catalog() {
  std::vector<StrategyInfo> out;
  out.push_back({"null", "follows the protocol", [](PartyId p, std::uint64_t, const MaliciousConfig&) {
                   return std::make_unique<MaliciousAdversary>(p);
                 }});
  out.push_back({"guess-c", "guesses c and flips output shares in the guessed output runs",
                 [](PartyId p, std::uint64_t seed, const MaliciousConfig& cfg) {
                   Rng rng(seed);
                   return std::unique_ptr<MaliciousAdversary>(
                       std::make_unique<GuessIndicator>(p, cfg.s, rng));
                 }});
  out.push_back({"single-run-tamper", "commits a transcript with one flipped internal share",
                 [](PartyId p, std::uint64_t seed, const MaliciousConfig& cfg) {
                   Rng rng(seed);
                   return std::unique_ptr<MaliciousAdversary>(
                       std::make_unique<SingleRunTamper>(p, cfg.s, rng));
                 }});
  out.push_back({"true-input-swap", "feeds its true input into the verification runs during selection",
                 [](PartyId p, std::uint64_t, const MaliciousConfig&) {
                   return std::unique_ptr<MaliciousAdversary>(std::make_unique<TrueInputSwap>(p));
                 }});
  out.push_back({"commitment-equivocation", "opens its transcript segments to altered shares",
                 [](PartyId p, std::uint64_t, const MaliciousConfig& cfg) {
                   return std::unique_ptr<MaliciousAdversary>(std::make_unique<CommitmentEquivocation>(
                       p, cfg.params.field().modulus()));
                 }});
  out.push_back({"inconsistent-input-sharing",
                 "sends both peers the same share of its random input",
                 [](PartyId p, std::uint64_t, const MaliciousConfig&) {
                   return std::unique_ptr<MaliciousAdversary>(
                       std::make_unique<InconsistentInputSharing>(p));
                 }});
  return out;
}

std::array<BitString, 3> draw_inputs(const Circuit& circuit, Rng& rng) {
  std::array<BitString, 3> out;
  for (PartyId p : kParties) out[p.slot()] = rng.bits(circuit.party_input_range(p.index()).size());
  return out;
}

void record(TrialReport& report, const TrialOutcome& outcome) {
  ++report.trials;
  if (outcome.disagreement) ++report.disagreements;
  switch (outcome.kind) {
    case TrialClass::Win: ++report.wins; break;
    case TrialClass::Clean: ++report.clean; break;
    case TrialClass::Abort: ++report.aborts[outcome.abort_code]; break;
  }
}

}  // namespace

GuessIndicator::GuessIndicator(PartyId corrupted, std::size_t s, Rng& rng)
    : MaliciousAdversary(corrupted), guess_(draw_guess(s, rng)) {}

GuessIndicator::GuessIndicator(PartyId corrupted, BitString guess)
    : MaliciousAdversary(corrupted), guess_(std::move(guess)) {}

void GuessIndicator::on_lanes_computed(const Circuit& circuit, WireShares& lanes) {
  const WireRange out = circuit.output_range();
  for (std::size_t j = 0; j < guess_.size(); ++j) {
    if (guess_.get(j)) continue;
    for (std::size_t w = out.first; w <= out.last; ++w) lanes.flip(w, j);
  }
}

const std::vector<StrategyInfo>& strategy_catalog() {
  static const std::vector<StrategyInfo> catalog = build_catalog();
  return catalog;
}

const StrategyInfo& find_strategy(std::string_view name) {
  for (const auto& info : strategy_catalog()) {
    if (info.name == name) return info;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::size_t TrialReport::abort_total() const {
  std::size_t total = 0;
  for (const auto& [code, n] : aborts) total += n;
  return total;
}

double TrialReport::win_rate() const {
  return trials == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(trials);
}

std::string TrialReport::to_line() const {
  std::ostringstream out;
  out << strategy << ' ' << s << ' ' << trials << ' ' << wins << ' ' << clean;
  for (const auto& [code, n] : aborts) out << " abort:" << code << '=' << n;
  return out.str();
}

TrialOutcome classify(const RunResult& run, PartyId corrupted, const BitString& expected) {
  TrialOutcome out;
  const BitString* first_accepted = nullptr;
  bool all_accepted = true;
  for (PartyId p : kParties) {
    if (p == corrupted) continue;
    const Outcome& o = run.outcome(p);
    if (const auto* value = std::get_if<BitString>(&o)) {
      if (*value != expected) out.kind = TrialClass::Win;
      if (first_accepted != nullptr && *first_accepted != *value) out.disagreement = true;
      if (first_accepted == nullptr) first_accepted = value;
    } else {
      if (all_accepted) out.abort_code = std::get<Abort>(o).code;
      all_accepted = false;
    }
  }
  if (out.kind != TrialClass::Win) out.kind = all_accepted ? TrialClass::Clean : TrialClass::Abort;
  return out;
}

TrialReport estimate(std::string_view strategy, const Circuit& circuit, std::size_t s,
                     std::size_t trials, std::uint64_t seed, const EstimateOptions& options) {
  const StrategyInfo& info = find_strategy(strategy);
  MaliciousConfig config;
  config.s = s;
  config.params = options.params;
  TrialReport report;
  report.strategy = info.name;
  report.s = s;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::string label = std::to_string(t);
    std::array<BitString, 3> inputs;
    if (options.inputs) {
      inputs = *options.inputs;
    } else {
      Rng input_rng(derive_seed(seed, "inputs:" + label));
      inputs = draw_inputs(circuit, input_rng);
    }
    auto adversary = info.make(options.corrupted, derive_seed(seed, "strategy:" + label), config);
    const MaliciousResult res =
        run_malicious(circuit, inputs, derive_seed(seed, "trial:" + label), config, adversary.get());
    record(report, classify(res.run, options.corrupted, eval_plaintext(circuit, join_inputs(inputs))));
  }
  return report;
}

Enumeration enumerate_guess_indicator(const Circuit& circuit, std::size_t s,
                                      const std::array<BitString, 3>& inputs, std::uint64_t seed,
                                      PartyId corrupted) {
  if (s == 0 || s > 16) throw std::invalid_argument("enumeration needs 1 <= s <= 16");
  const std::uint64_t count = std::uint64_t{1} << s;
  const BitString expected = eval_plaintext(circuit, join_inputs(inputs));
  Enumeration out;
  double probability = 0;
  Rng share_rng(derive_seed(seed, "indicator-shares"));
  for (std::uint64_t c = 0; c < count; ++c) {
    for (std::uint64_t g = 0; g + 1 < count; ++g) {
      MaliciousConfig config;
      config.s = s;
      const BitString target = BitString::from_word(c, s);
      std::array<BitString, 3> shares{share_rng.bits(s), share_rng.bits(s), BitString()};
      shares[2] = target ^ shares[0] ^ shares[1];
      config.forced_indicator = shares;
      GuessIndicator adversary(corrupted, BitString::from_word(g, s));
      const MaliciousResult res =
          run_malicious(circuit, inputs, derive_seed(seed, "case:" + std::to_string(out.cases)),
                        config, &adversary);
      ++out.cases;
      if (classify(res.run, corrupted, expected).kind == TrialClass::Win) {
        ++out.wins;
        probability += 1.0 / static_cast<double>(count) / static_cast<double>(count - 1);
      }
    }
  }
  out.probability = probability;
  return out;
}

}  // namespace trio
