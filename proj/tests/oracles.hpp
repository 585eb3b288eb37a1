#pragma once

// Reference computations the tests compare the library against. Each one
// works from first principles (gate list, polynomial formulas, truth tables)
// and shares no code with the implementation beyond the data types.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "trio/bits.hpp"
#include "trio/circuit.hpp"

namespace oracle {

/// Output bits by recursion from each output wire through the gate list.
inline std::vector<int> eval(const trio::Circuit& c, const std::vector<int>& x) {
  std::map<std::size_t, int> memo;
  std::function<int(std::size_t)> value = [&](std::size_t w) -> int {
    if (w <= c.n()) return x[w - 1];
    if (auto it = memo.find(w); it != memo.end()) return it->second;
    const trio::Gate& g = c.gates()[w - c.n() - 1];
    const int a = value(g.a);
    const int b = value(g.b);
    const int v = g.op == trio::GateOp::And ? (a & b) : (a ^ b);
    memo[w] = v;
    return v;
  };
  std::vector<int> out;
  for (std::size_t w = c.n() + c.q() - c.m() + 1; w <= c.n() + c.q(); ++w) out.push_back(value(w));
  return out;
}

inline std::vector<int> to_vec(const trio::BitString& b) {
  std::vector<int> v;
  for (std::size_t i = 0; i < b.size(); ++i) v.push_back(b.get(i) ? 1 : 0);
  return v;
}

inline trio::BitString from_vec(const std::vector<int>& v) {
  trio::BitString b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b.set(i, v[i] != 0);
  return b;
}

/// Longest path counting AND gates, by exhaustive recursion on the DAG.
inline std::size_t and_depth(const trio::Circuit& c) {
  std::function<std::size_t(std::size_t)> depth = [&](std::size_t w) -> std::size_t {
    if (w <= c.n()) return 0;
    const trio::Gate& g = c.gates()[w - c.n() - 1];
    const std::size_t d = std::max(depth(g.a), depth(g.b));
    return d + (g.op == trio::GateOp::And ? 1 : 0);
  };
  std::size_t best = 0;
  for (std::size_t w = c.n() + 1; w <= c.n() + c.q(); ++w) best = std::max(best, depth(w));
  return best;
}

inline std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e != 0) {
    if (e & 1U) r = static_cast<std::uint64_t>((unsigned __int128)r * b % p);
    b = static_cast<std::uint64_t>((unsigned __int128)b * b % p);
    e >>= 1U;
  }
  return r;
}

/// f(0) of the line through (x1, y1) and (x2, y2) over F_p, via
/// y1 * x2/(x2-x1) + y2 * x1/(x1-x2) with Fermat inverses.
inline std::uint64_t intercept(std::uint64_t x1, std::uint64_t y1, std::uint64_t x2,
                               std::uint64_t y2, std::uint64_t p) {
  auto sub = [p](std::uint64_t a, std::uint64_t b) { return (a + p - b % p) % p; };
  auto mul = [p](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((unsigned __int128)a * b % p);
  };
  const std::uint64_t l1 = mul(x2, mod_pow(sub(x2, x1), p - 2, p));
  const std::uint64_t l2 = mul(x1, mod_pow(sub(x1, x2), p - 2, p));
  return (mul(y1, l1) + mul(y2, l2)) % p;
}

/// Input selection semantics: run uses the true input iff its indicator bit is 0.
inline trio::BitString selected(const trio::BitString& x0, const trio::BitString& x1, bool c) {
  return c ? x1 : x0;
}

/// Half-width of a k-sigma binomial interval around p for n trials.
inline double binomial_tolerance(double p, std::size_t n, double k = 3.0) {
  return k * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

/// Every circuit with three one-bit inputs (one per party) and one or two
/// gates, for every output count.
inline std::vector<trio::Circuit> small_family() {
  using trio::Gate;
  using trio::GateOp;
  std::vector<trio::Circuit> out;
  const GateOp ops[] = {GateOp::Xor, GateOp::And};
  auto operands = [](std::size_t below) {
    std::vector<std::pair<std::size_t, std::size_t>> v;
    for (std::size_t a = 1; a < below; ++a)
      for (std::size_t b = a + 1; b < below; ++b) v.emplace_back(a, b);
    return v;
  };
  for (auto [a, b] : operands(4))
    for (GateOp op : ops) {
      const Gate g1{4, a, b, op};
      out.emplace_back(3, 1, std::array<std::size_t, 3>{1, 2, 3}, std::vector<Gate>{g1});
      for (auto [c, d] : operands(5))
        for (GateOp op2 : ops)
          for (std::size_t m = 1; m <= 2; ++m)
            out.emplace_back(3, m, std::array<std::size_t, 3>{1, 2, 3},
                             std::vector<Gate>{g1, Gate{5, c, d, op2}});
    }
  return out;
}

/// Cuts a full input string into the three parties' pieces.
inline std::array<trio::BitString, 3> split(const trio::Circuit& c, const trio::BitString& x) {
  const auto b = c.party_bounds();
  return {x.slice(0, b[1]), x.slice(b[1], b[2] - b[1]), x.slice(b[2], b[3] - b[2])};
}

}  // namespace oracle
