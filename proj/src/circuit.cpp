#include "trio/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace trio {

std::string_view to_string(GateOp op) { return op == GateOp::And ? "AND" : "XOR"; }

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : CircuitError(Kind::Syntax,
                   "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                       what),
      line_(line),
      column_(column) {}

Circuit::Circuit(std::size_t n, std::size_t m, std::array<std::size_t, 3> party_bounds,
                 std::vector<Gate> gates)
    : n_(n), m_(m), bounds_{0, party_bounds[0], party_bounds[1], party_bounds[2]},
      gates_(std::move(gates)) {
  if (!(bounds_[1] <= bounds_[2] && bounds_[2] <= bounds_[3])) {
    throw CircuitError(CircuitError::Kind::PartyBounds, "party bounds must be non-decreasing");
  }
  if (bounds_[3] != n_) {
    throw CircuitError(CircuitError::Kind::PartyBounds,
                       "last party bound " + std::to_string(bounds_[3]) + " must equal n = " +
                           std::to_string(n_));
  }
  if (m_ > gates_.size()) {
    throw CircuitError(CircuitError::Kind::Shape,
                       "output count m = " + std::to_string(m_) + " exceeds gate count q = " +
                           std::to_string(gates_.size()));
  }

  levels_.assign(wire_count() + 1, 0);
  std::size_t depth = 0;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    const std::size_t expected = n_ + i + 1;
    if (g.out != expected) {
      throw CircuitError(CircuitError::Kind::Shape, "gate " + std::to_string(i + 1) +
                                                        " writes wire " + std::to_string(g.out) +
                                                        ", expected " + std::to_string(expected));
    }
    if (!(g.a >= 1 && g.a < g.b && g.b < g.out)) {
      throw CircuitError(CircuitError::Kind::WireOrder,
                         "wire order violation at gate " + std::to_string(g.out) +
                             ": need 1 <= F(g) < S(g) < g, got " + std::to_string(g.a) + ", " +
                             std::to_string(g.b));
    }
    const std::size_t in = std::max(levels_[g.a], levels_[g.b]);
    levels_[g.out] = in + (g.op == GateOp::And ? 1 : 0);
    depth = std::max(depth, levels_[g.out]);
    if (g.op == GateOp::And) ++and_count_;
  }

  layers_.resize(depth + 1);
  for (const Gate& g : gates_) {
    auto& layer = layers_[levels_[g.out]];
    (g.op == GateOp::And ? layer.ands : layer.xors).push_back(g.out);
  }
}

const Gate& Circuit::gate(std::size_t g) const {
  if (g <= n_ || g > wire_count()) {
    throw std::out_of_range("wire " + std::to_string(g) + " is not a gate output");
  }
  return gates_[g - n_ - 1];
}

WireRange Circuit::party_input_range(int party) const {
  if (party < 1 || party > 3) {
    throw std::out_of_range("party index must be 1, 2 or 3, got " + std::to_string(party));
  }
  return {bounds_[party - 1] + 1, bounds_[party]};
}

std::size_t Circuit::level(std::size_t w) const {
  if (w == 0 || w > wire_count()) throw std::out_of_range("wire index out of range");
  return levels_[w];
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::size_t line_no, std::string_view line)
      : line_no_(line_no), tokens_(tokenize(line)), end_column_(line.size() + 1) {}

  const std::vector<Token>& tokens() const { return tokens_; }

  [[noreturn]] void fail(std::size_t column, const std::string& what) const {
    throw ParseError(line_no_, column, what);
  }

  void expect_count(std::size_t count, std::string_view shape) const {
    if (tokens_.size() != count) {
      const std::size_t col = tokens_.size() > count ? tokens_[count].column : end_column_;
      fail(col, "expected '" + std::string(shape) + "'");
    }
  }

  void expect_word(std::size_t idx, std::string_view word) const {
    if (tokens_[idx].text != word) {
      fail(tokens_[idx].column, "expected '" + std::string(word) + "', found '" +
                                    std::string(tokens_[idx].text) + "'");
    }
  }

  std::size_t number(std::size_t idx) const {
    const Token& t = tokens_[idx];
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
      fail(t.column, "expected a non-negative integer, found '" + std::string(t.text) + "'");
    }
    return value;
  }

 private:
  std::size_t line_no_;
  std::vector<Token> tokens_;
  std::size_t end_column_;
};

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') lines.emplace_back(line_no, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  if (lines.empty()) throw ParseError(1, 1, "empty circuit source");

  LineParser header(lines[0].first, lines[0].second);
  header.expect_count(4, "circuit <n> <m> <q>");
  header.expect_word(0, "circuit");
  const std::size_t n = header.number(1);
  const std::size_t m = header.number(2);
  const std::size_t q = header.number(3);

  if (lines.size() < 2) throw ParseError(lines[0].first + 1, 1, "missing 'parties' line");
  LineParser parties(lines[1].first, lines[1].second);
  parties.expect_count(4, "parties <n1> <n2> <n3>");
  parties.expect_word(0, "parties");
  const std::array<std::size_t, 3> bounds{parties.number(1), parties.number(2),
                                          parties.number(3)};

  if (lines.size() - 2 != q) {
    const std::size_t where = lines.size() - 2 > q ? lines[2 + q].first : lines.back().first + 1;
    throw ParseError(where, 1,
                     "header declares " + std::to_string(q) + " gates, found " +
                         std::to_string(lines.size() - 2));
  }

  std::vector<Gate> gates;
  gates.reserve(q);
  for (std::size_t i = 0; i < q; ++i) {
    LineParser gl(lines[2 + i].first, lines[2 + i].second);
    gl.expect_count(5, "<XOR|AND> <a> <b> -> <g>");
    Gate g;
    const auto& op = gl.tokens()[0];
    if (op.text == "XOR") {
      g.op = GateOp::Xor;
    } else if (op.text == "AND") {
      g.op = GateOp::And;
    } else {
      gl.fail(op.column, "unknown gate type '" + std::string(op.text) + "'");
    }
    g.a = gl.number(1);
    g.b = gl.number(2);
    gl.expect_word(3, "->");
    g.out = gl.number(4);
    if (!(g.a >= 1 && g.a < g.b && g.b < g.out)) {
      throw CircuitError(CircuitError::Kind::WireOrder,
                         "line " + std::to_string(lines[2 + i].first) + ", column " +
                             std::to_string(gl.tokens()[1].column) +
                             ": wire order violation, need 1 <= F(g) < S(g) < g");
    }
    if (g.out != n + i + 1) {
      gl.fail(gl.tokens()[4].column, "gate output " + std::to_string(g.out) + " out of order, expected " +
                                         std::to_string(n + i + 1));
    }
    gates.push_back(g);
  }
  return Circuit(n, m, bounds, std::move(gates));
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream out;
  const auto b = circuit.party_bounds();
  out << "circuit " << circuit.n() << ' ' << circuit.m() << ' ' << circuit.q() << '\n';
  out << "parties " << b[1] << ' ' << b[2] << ' ' << b[3] << '\n';
  for (const Gate& g : circuit.gates()) {
    out << to_string(g.op) << ' ' << g.a << ' ' << g.b << " -> " << g.out << '\n';
  }
  return out.str();
}

BitString eval_wires(const Circuit& circuit, const BitString& x) {
  if (x.size() != circuit.n()) {
    throw std::invalid_argument("input has " + std::to_string(x.size()) + " bits, circuit expects " +
                                std::to_string(circuit.n()));
  }
  BitString wires(circuit.wire_count());
  for (std::size_t i = 0; i < x.size(); ++i) wires.set(i, x.get(i));
  for (const Gate& g : circuit.gates()) {
    const bool a = wires.get(g.a - 1);
    const bool b = wires.get(g.b - 1);
    wires.set(g.out - 1, g.op == GateOp::And ? (a && b) : (a != b));
  }
  return wires;
}

BitString eval_plaintext(const Circuit& circuit, const BitString& x) {
  const BitString wires = eval_wires(circuit, x);
  const WireRange out = circuit.output_range();
  return wires.slice(out.first - 1, out.size());
}

}  // namespace trio
