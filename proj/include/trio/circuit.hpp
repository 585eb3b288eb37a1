#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trio/bits.hpp"

namespace trio {

enum class GateOp : std::uint8_t { Xor, And };

std::string_view to_string(GateOp op);

/// A fan-in-2 gate, indexed by its output wire. Wires are numbered from 1.
struct Gate {
  std::size_t out = 0;
  std::size_t a = 0;  // first input wire, F(g)
  std::size_t b = 0;  // second input wire, S(g)
  GateOp op = GateOp::Xor;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Inclusive 1-based wire interval; empty when first > last.
struct WireRange {
  std::size_t first = 1;
  std::size_t last = 0;

  std::size_t size() const noexcept { return last >= first ? last - first + 1 : 0; }
  bool empty() const noexcept { return size() == 0; }
  bool contains(std::size_t w) const noexcept { return w >= first && w <= last; }
  friend bool operator==(const WireRange&, const WireRange&) = default;
};

class CircuitError : public std::runtime_error {
 public:
  enum class Kind { Syntax, WireOrder, PartyBounds, Shape };

  CircuitError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class ParseError : public CircuitError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Gates grouped by AND depth. Layer d holds the AND gates whose longest
/// AND-path ends at depth d, and the XOR gates of that depth. Layer 0 never
/// contains AND gates.
struct GateLayer {
  std::vector<std::size_t> ands;
  std::vector<std::size_t> xors;
};

/// Boolean circuit C = (n, m, q, F, S, G) over XOR/AND gates. Inputs occupy
/// wires 1..n, gate g writes wire g (n+1..n+q), and the outputs are the last
/// m wires. Immutable after construction.
class Circuit {
 public:
  /// party_bounds are the cumulative bounds (n1, n2, n3); n3 must equal n.
  /// Throws CircuitError when any structural invariant fails.
  Circuit(std::size_t n, std::size_t m, std::array<std::size_t, 3> party_bounds,
          std::vector<Gate> gates);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t q() const noexcept { return gates_.size(); }
  std::size_t wire_count() const noexcept { return n_ + gates_.size(); }

  const std::vector<Gate>& gates() const noexcept { return gates_; }
  /// Gate writing wire g (n < g <= n+q).
  const Gate& gate(std::size_t g) const;

  /// (n0, n1, n2, n3) with n0 = 0 and n3 = n.
  std::array<std::size_t, 4> party_bounds() const noexcept { return bounds_; }
  /// Input wires of party i in {1,2,3}: {n_{i-1}+1 .. n_i}.
  WireRange party_input_range(int party) const;

  WireRange input_range() const noexcept { return {1, n_}; }
  WireRange internal_range() const noexcept { return {n_ + 1, n_ + q() - m_}; }
  WireRange output_range() const noexcept { return {n_ + q() - m_ + 1, n_ + q()}; }

  std::size_t and_depth() const noexcept { return layers_.size() - 1; }
  std::size_t and_count() const noexcept { return and_count_; }
  /// AND depth of wire w (inputs are 0).
  std::size_t level(std::size_t w) const;
  const std::vector<GateLayer>& layers() const noexcept { return layers_; }

  friend bool operator==(const Circuit& lhs, const Circuit& rhs) {
    return lhs.n_ == rhs.n_ && lhs.m_ == rhs.m_ && lhs.bounds_ == rhs.bounds_ &&
           lhs.gates_ == rhs.gates_;
  }

 private:
  std::size_t n_;
  std::size_t m_;
  std::array<std::size_t, 4> bounds_;
  std::vector<Gate> gates_;
  std::vector<std::size_t> levels_;
  std::vector<GateLayer> layers_;
  std::size_t and_count_ = 0;
};

/// Parses the line-oriented circuit format:
///   circuit <n> <m> <q>
///   parties <n1> <n2> <n3>
///   <XOR|AND> <a> <b> -> <g>     (q lines, g increasing from n+1)
/// Blank lines and lines starting with '#' are ignored.
Circuit parse_circuit(std::string_view text);
std::string to_text(const Circuit& circuit);

/// Plaintext reference evaluator; x has length n, result has length m.
BitString eval_plaintext(const Circuit& circuit, const BitString& x);
/// Values of all wires 1..n+q (index w-1).
BitString eval_wires(const Circuit& circuit, const BitString& x);

inline std::size_t and_depth(const Circuit& circuit) { return circuit.and_depth(); }
inline WireRange party_input_range(const Circuit& circuit, int party) {
  return circuit.party_input_range(party);
}

}  // namespace trio
