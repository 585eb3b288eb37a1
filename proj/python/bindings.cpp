#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "trio/adversary.hpp"
#include "trio/circuit_gen.hpp"
#include "trio/cli.hpp"
#include "trio/malicious.hpp"
#include "trio/semihonest.hpp"

namespace py = pybind11;
using namespace trio;

namespace {

std::array<BitString, 3> to_inputs(const std::array<std::string, 3>& bits) {
  return {BitString::from_string(bits[0]), BitString::from_string(bits[1]),
          BitString::from_string(bits[2])};
}

py::dict outcome_dict(PartyId p, const Outcome& o, bool corrupted) {
  py::dict d;
  d["party"] = p.index();
  d["corrupted"] = corrupted;
  if (const auto* out = std::get_if<BitString>(&o)) {
    d["accepted"] = true;
    d["output"] = out->to_string();
  } else {
    const Abort& a = std::get<Abort>(o);
    d["accepted"] = false;
    d["abort"] = a.code;
    d["phase"] = a.phase;
    d["run"] = a.run ? py::cast(*a.run) : py::none();
    d["detail"] = a.detail;
  }
  return d;
}

py::dict run_dict(const RunResult& r, std::optional<PartyId> corrupted) {
  py::list outcomes;
  for (PartyId p : kParties) outcomes.append(outcome_dict(p, r.outcome(p), corrupted == p));
  py::dict bytes;
  for (const auto& [channel, n] : r.metrics.bytes_per_channel) {
    bytes[py::make_tuple(channel.first, channel.second)] = n;
  }
  py::dict d;
  d["outcomes"] = outcomes;
  d["rounds"] = r.metrics.rounds;
  d["bytes"] = bytes;
  d["total_bytes"] = r.metrics.total_bytes();
  d["trace"] = r.trace;
  return d;
}

py::dict run(const Circuit& circuit, const std::array<std::string, 3>& inputs,
             const std::string& mode, std::size_t s, std::uint64_t seed,
             const std::optional<std::string>& adversary, bool trace) {
  const auto in = to_inputs(inputs);
  if (mode == "semi-honest") {
    if (adversary) throw std::invalid_argument("adversaries need mode='malicious'");
    return run_dict(run_semi_honest(circuit, in, seed, nullptr, {trace}).run, std::nullopt);
  }
  if (mode != "malicious") throw std::invalid_argument("mode must be semi-honest or malicious");
  MaliciousConfig cfg;
  cfg.s = s;
  cfg.trace = trace;
  std::unique_ptr<MaliciousAdversary> adv;
  if (adversary) {
    adv = find_strategy(*adversary).make(PartyId(1), derive_seed(seed, "strategy"), cfg);
  }
  const auto res = run_malicious(circuit, in, seed, cfg, adv.get());
  py::dict d = run_dict(res.run, adv ? std::optional<PartyId>(PartyId(1)) : std::nullopt);
  d["indicator"] = res.indicator.to_string();
  return d;
}

py::dict report_dict(const TrialReport& r) {
  py::dict d;
  d["strategy"] = r.strategy;
  d["s"] = r.s;
  d["trials"] = r.trials;
  d["wins"] = r.wins;
  d["clean"] = r.clean;
  d["aborts"] = r.aborts;
  d["disagreements"] = r.disagreements;
  d["win_rate"] = r.win_rate();
  d["line"] = r.to_line();
  return d;
}

}  // namespace

PYBIND11_MODULE(trio3pc, m) {
  m.doc() = "Three-party secure computation over boolean circuits";

  py::register_exception<CircuitError>(m, "CircuitError", PyExc_ValueError);

  py::class_<Circuit>(m, "Circuit")
      .def_static("parse", [](const std::string& text) { return parse_circuit(text); })
      .def_static("sample", [](const std::string& name) { return gen::by_name(name); })
      .def_property_readonly("n", &Circuit::n)
      .def_property_readonly("m", &Circuit::m)
      .def_property_readonly("q", &Circuit::q)
      .def_property_readonly("and_depth", &Circuit::and_depth)
      .def("input_widths",
           [](const Circuit& c) {
             return std::array<std::size_t, 3>{c.party_input_range(1).size(),
                                               c.party_input_range(2).size(),
                                               c.party_input_range(3).size()};
           })
      .def("eval",
           [](const Circuit& c, const std::string& x) {
             return eval_plaintext(c, BitString::from_string(x)).to_string();
           })
      .def("to_text", [](const Circuit& c) { return to_text(c); })
      .def("__eq__", [](const Circuit& a, const Circuit& b) { return a == b; });

  m.def("sample_names", &gen::sample_names);
  m.def("strategies", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : strategy_catalog()) out.emplace_back(s.name, s.summary);
    return out;
  });
  m.def("run", &run, py::arg("circuit"), py::arg("inputs"), py::arg("mode") = "semi-honest",
        py::arg("s") = 8, py::arg("seed") = 1, py::arg("adversary") = std::nullopt,
        py::arg("trace") = false,
        "Runs the protocol once; inputs are three bit strings, wire order left to right.");
  m.def(
      "estimate",
      [](const std::string& strategy, const Circuit& circuit, std::size_t s, std::size_t trials,
         std::uint64_t seed) {
        return report_dict(estimate(strategy, circuit, s, trials, seed));
      },
      py::arg("strategy"), py::arg("circuit"), py::arg("s"), py::arg("trials"),
      py::arg("seed") = 1);
  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> all{"trio"};
        all.insert(all.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : all) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
