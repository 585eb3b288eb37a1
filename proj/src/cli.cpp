#include "trio/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trio/adversary.hpp"
#include "trio/circuit_gen.hpp"
#include "trio/malicious.hpp"
#include "trio/semihonest.hpp"

namespace trio {

std::array<BitString, 3> parse_inputs(std::string_view text) {
  std::array<BitString, 3> out;
  std::array<bool, 3> seen{};
  std::size_t pos = 0;
  while (pos <= text.size() && !text.empty()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view part = text.substr(pos, comma - pos);
    if (part.size() < 3 || (part[0] != 'p' && part[0] != 'P') || part[2] != ':' ||
        part[1] < '1' || part[1] > '3') {
      throw std::invalid_argument("expected p<1-3>:<bits>, got '" + std::string(part) + "'");
    }
    const std::size_t slot = static_cast<std::size_t>(part[1] - '1');
    if (seen[slot]) throw std::invalid_argument("input for p" + std::string(1, part[1]) + " given twice");
    seen[slot] = true;
    out[slot] = BitString::from_string(part.substr(3));
    pos = comma + 1;
  }
  return out;
}

namespace {

bool trace_enabled() {
  const char* v = std::getenv("TRIO_TRACE");
  return v != nullptr && std::string_view(v) == "1";
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str());
}

void print_metrics(std::ostream& out, const Metrics& m) {
  out << "rounds " << m.rounds << '\n';
  for (PartyId from : kParties) {
    for (PartyId to : kParties) {
      if (from == to) continue;
      out << "bytes " << from.name() << "->" << to.name() << ' ' << m.bytes(from, to) << '\n';
    }
  }
  out << "bytes total " << m.total_bytes() << '\n';
}

void print_trace(std::ostream& err, const std::vector<std::string>& trace) {
  for (const auto& line : trace) err << line << '\n';
}

/// Prints per-party outcomes and the overall verdict; returns the exit code.
int report_run(std::ostream& out, const RunResult& run, std::optional<PartyId> corrupted) {
  std::optional<BitString> agreed;
  bool all_accepted = true;
  bool disagree = false;
  std::optional<Abort> first_abort;
  for (PartyId p : kParties) {
    const bool bad = corrupted && *corrupted == p;
    out << p.name() << (bad ? " (corrupted)" : "");
    if (const auto* v = std::get_if<BitString>(&run.outcome(p))) {
      out << " accept " << v->to_string() << '\n';
      if (bad) continue;
      if (agreed && *agreed != *v) disagree = true;
      if (!agreed) agreed = *v;
    } else {
      const Abort& a = std::get<Abort>(run.outcome(p));
      out << " abort " << a.to_string() << '\n';
      if (bad) continue;
      all_accepted = false;
      if (!first_abort) first_abort = a;
    }
  }
  if (all_accepted && !disagree) {
    out << "output " << agreed->to_string() << '\n';
    return kExitAccept;
  }
  if (first_abort) {
    out << "abort " << first_abort->code;
    if (first_abort->run) out << " run " << *first_abort->run;
    out << '\n';
  } else {
    out << "abort disagreement\n";
  }
  return kExitAbort;
}

struct Options {
  std::string circuit;
  std::string inputs;
  std::string mode = "semi-honest";
  std::string attack_mode = "malicious";
  std::size_t s = 8;
  std::uint64_t seed = 1;
  std::string adversary;
  std::size_t trials = 1000;
  std::vector<std::string> circuits;
  std::string name;
  std::string output;
  bool list = false;
};

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  const Circuit circuit = load_circuit(o.circuit);
  const auto inputs = parse_inputs(o.inputs);
  check_inputs(circuit, inputs);
  const bool trace = trace_enabled();

  if (o.mode == "semi-honest") {
    if (!o.adversary.empty()) throw std::invalid_argument("--adversary needs --mode malicious");
    SemiHonestOptions opts;
    opts.trace = trace;
    const auto res = run_semi_honest(circuit, inputs, o.seed, nullptr, opts);
    print_trace(err, res.run.trace);
    out << "mode semi-honest seed " << o.seed << '\n';
    const int code = report_run(out, res.run, std::nullopt);
    print_metrics(out, res.run.metrics);
    return code;
  }
  if (o.mode != "malicious") throw std::invalid_argument("unknown mode '" + o.mode + "'");
  if (o.s == 0) throw std::invalid_argument("--s must be at least 1");

  MaliciousConfig cfg;
  cfg.s = o.s;
  cfg.trace = trace;
  std::unique_ptr<MaliciousAdversary> adversary;
  std::optional<PartyId> corrupted;
  if (!o.adversary.empty()) {
    const StrategyInfo& info = find_strategy(o.adversary);
    corrupted = PartyId(1);
    adversary = info.make(*corrupted, derive_seed(o.seed, "strategy"), cfg);
  }
  const auto res = run_malicious(circuit, inputs, o.seed, cfg, adversary.get());
  print_trace(err, res.run.trace);
  out << "mode malicious s " << o.s << " seed " << o.seed;
  if (!o.adversary.empty()) out << " adversary " << o.adversary;
  out << '\n';
  out << "c " << res.indicator.to_string() << '\n';
  const int code = report_run(out, res.run, corrupted);
  print_metrics(out, res.run.metrics);
  return code;
}

int cmd_attack(const Options& o, std::ostream& out) {
  const Circuit circuit = load_circuit(o.circuit);
  if (o.s == 0) throw std::invalid_argument("--s must be at least 1");
  if (o.trials == 0) throw std::invalid_argument("--trials must be at least 1");
  EstimateOptions opts;
  if (!o.inputs.empty()) {
    opts.inputs = parse_inputs(o.inputs);
    check_inputs(circuit, *opts.inputs);
  }
  const TrialReport report = estimate(o.adversary, circuit, o.s, o.trials, o.seed, opts);
  const double reference = std::ldexp(1.0, -static_cast<int>(o.s));
  out << report.to_line() << '\n';
  out << std::setprecision(6) << "win-rate " << report.win_rate() << '\n';
  out << "reference 2^-" << o.s << " = " << reference << '\n';
  out << "disagreements " << report.disagreements << '\n';
  return kExitAccept;
}

struct BenchRow {
  std::string name;
  std::size_t depth;
  std::size_t rounds;
  std::uint64_t bytes;
};

int cmd_bench(const Options& o, std::ostream& out) {
  std::vector<std::pair<std::string, Circuit>> set;
  if (o.circuits.empty()) {
    for (std::size_t d = 1; d <= 10; ++d) {
      const std::string name = "and-chain:" + std::to_string(d);
      set.emplace_back(name, gen::by_name(name));
    }
    set.emplace_back("xor-only:4", gen::xor_only(4));
    set.emplace_back("majority", gen::majority());
  } else {
    for (const auto& path : o.circuits) set.emplace_back(path, load_circuit(path));
  }
  if (o.s == 0) throw std::invalid_argument("--s must be at least 1");

  std::array<std::vector<BenchRow>, 2> rows;
  for (const auto& [name, circuit] : set) {
    Rng rng(derive_seed(o.seed, "bench:" + name));
    std::array<BitString, 3> inputs;
    for (PartyId p : kParties) {
      inputs[p.slot()] = rng.bits(circuit.party_input_range(p.index()).size());
    }
    const auto semi = run_semi_honest(circuit, inputs, o.seed);
    rows[0].push_back({name, circuit.and_depth(), semi.run.metrics.rounds,
                       semi.run.metrics.total_bytes()});

    MaliciousConfig cfg;
    cfg.s = o.s;
    // All-ones c ends the run early; retry under a fresh seed.
    for (std::uint64_t attempt = 0;; ++attempt) {
      const auto mal = run_malicious(circuit, inputs,
                                     derive_seed(o.seed, "attempt:" + std::to_string(attempt)), cfg);
      if (mal.indicator.popcount() == cfg.s) continue;
      rows[1].push_back({name, circuit.and_depth(), mal.run.metrics.rounds,
                         mal.run.metrics.total_bytes()});
      break;
    }
  }

  const char* modes[] = {"semi-honest", "malicious"};
  std::array<std::optional<long>, 2> offsets;
  bool constant = true;
  out << "circuit mode and_depth rounds bytes rounds-depth\n";
  for (std::size_t m = 0; m < 2; ++m) {
    for (const auto& row : rows[m]) {
      const long offset = static_cast<long>(row.rounds) - static_cast<long>(row.depth);
      out << row.name << ' ' << modes[m] << ' ' << row.depth << ' ' << row.rounds << ' '
          << row.bytes << ' ' << offset << '\n';
      if (!offsets[m]) offsets[m] = offset;
      if (*offsets[m] != offset) constant = false;
    }
  }
  for (std::size_t m = 0; m < 2; ++m) {
    out << modes[m] << " rounds-depth " << (constant ? std::to_string(*offsets[m]) : "varies")
        << '\n';
  }
  if (!constant) return kExitAbort;
  out << "malicious overhead " << (*offsets[1] - *offsets[0]) << '\n';
  return kExitAccept;
}

int cmd_gen(const Options& o, std::ostream& out) {
  if (o.list) {
    for (const auto& name : gen::sample_names()) out << name << '\n';
    return kExitAccept;
  }
  if (o.name.empty()) throw std::invalid_argument("--name is required (see --list)");
  const std::string text = to_text(gen::by_name(o.name));
  if (o.output.empty()) {
    out << text;
    return kExitAccept;
  }
  std::ofstream file(o.output);
  if (!file) throw std::runtime_error("cannot write '" + o.output + "'");
  file << text;
  return kExitAccept;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"trio: three-party secure computation over a simulated network"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "evaluate a circuit under the protocol");
  run->add_option("--circuit", o.circuit, "circuit file")->required();
  run->add_option("--inputs", o.inputs, "p1:<bits>,p2:<bits>,p3:<bits>");
  run->add_option("--mode", o.mode, "semi-honest | malicious")->capture_default_str();
  run->add_option("--s", o.s, "number of cut-and-choose runs")->capture_default_str();
  run->add_option("--seed", o.seed)->capture_default_str();
  run->add_option("--adversary", o.adversary, "strategy controlling P1 (malicious mode)");

  auto* attack = app.add_subcommand("attack", "estimate a strategy's success rate");
  attack->add_option("--circuit", o.circuit, "circuit file")->required();
  attack->add_option("--adversary", o.adversary, "strategy name")->required();
  attack->add_option("--inputs", o.inputs, "fixed inputs (random per trial if omitted)");
  attack->add_option("--mode", o.attack_mode, "must be malicious")->capture_default_str();
  attack->add_option("--s", o.s)->capture_default_str();
  attack->add_option("--trials", o.trials)->capture_default_str();
  attack->add_option("--seed", o.seed)->capture_default_str();

  auto* bench = app.add_subcommand("bench", "rounds and bytes per circuit and mode");
  bench->add_option("--circuit", o.circuits, "circuit files (default: built-in set)");
  bench->add_option("--s", o.s)->capture_default_str();
  bench->add_option("--seed", o.seed)->capture_default_str();

  auto* gen = app.add_subcommand("gen-circuit", "emit a sample circuit");
  gen->add_option("--name", o.name, "sample name");
  gen->add_option("--out", o.output, "write to file instead of stdout");
  gen->add_flag("--list", o.list, "list sample names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitAccept : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(o, out, err);
    if (attack->parsed()) {
      if (o.attack_mode != "malicious") throw std::invalid_argument("attack runs in malicious mode only");
      return cmd_attack(o, out);
    }
    if (bench->parsed()) return cmd_bench(o, out);
    return cmd_gen(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace trio
