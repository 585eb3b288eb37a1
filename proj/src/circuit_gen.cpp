#include "trio/circuit_gen.hpp"

#include <charconv>
#include <stdexcept>

namespace trio::gen {

std::array<std::size_t, 3> even_bounds(std::size_t n) {
  const std::size_t base = n / 3;
  const std::size_t extra = n % 3;
  const std::size_t n1 = base + (extra > 0 ? 1 : 0);
  const std::size_t n2 = n1 + base + (extra > 1 ? 1 : 0);
  return {n1, n2, n};
}

Circuit and_gate() { return Circuit(2, 1, {1, 2, 2}, {Gate{3, 1, 2, GateOp::And}}); }

Circuit and_chain(std::size_t depth) {
  if (depth == 0) throw std::invalid_argument("and_chain: depth must be at least 1");
  const std::size_t n = depth + 1;
  std::vector<Gate> gates;
  gates.push_back({n + 1, 1, 2, GateOp::And});
  for (std::size_t k = 2; k <= depth; ++k) {
    gates.push_back({n + k, k + 1, n + k - 1, GateOp::And});
  }
  return Circuit(n, 1, even_bounds(n), std::move(gates));
}

Circuit xor_only(std::size_t n) {
  if (n < 2) throw std::invalid_argument("xor_only: need at least two inputs");
  std::vector<Gate> gates;
  gates.push_back({n + 1, 1, 2, GateOp::Xor});
  for (std::size_t k = 3; k <= n; ++k) gates.push_back({n + k - 1, k, n + k - 2, GateOp::Xor});
  return Circuit(n, 1, even_bounds(n), std::move(gates));
}

Circuit majority() {
  // (a & b) ^ (a & c) ^ (b & c)
  return Circuit(3, 1, {1, 2, 3},
                 {Gate{4, 1, 2, GateOp::And}, Gate{5, 1, 3, GateOp::And},
                  Gate{6, 2, 3, GateOp::And}, Gate{7, 4, 5, GateOp::Xor},
                  Gate{8, 6, 7, GateOp::Xor}});
}

Circuit random_circuit(Rng& rng, std::size_t n, std::size_t q, std::size_t m,
                       std::array<std::size_t, 3> party_bounds, double and_fraction) {
  if (n < 2) throw std::invalid_argument("random_circuit: need at least two inputs");
  std::vector<Gate> gates;
  gates.reserve(q);
  std::bernoulli_distribution is_and(and_fraction);
  for (std::size_t i = 0; i < q; ++i) {
    const std::size_t out = n + i + 1;
    const std::size_t avail = out - 1;
    std::size_t a = rng.below(avail) + 1;
    std::size_t b = rng.below(avail - 1) + 1;
    if (b >= a) ++b;
    if (a > b) std::swap(a, b);
    gates.push_back({out, a, b, is_and(rng) ? GateOp::And : GateOp::Xor});
  }
  return Circuit(n, m, party_bounds, std::move(gates));
}

namespace {

std::size_t parse_count(std::string_view text, std::string_view name) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad number '" + std::string(text) + "' in circuit name '" +
                                std::string(name) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(sep, pos);
    out.push_back(text.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

Circuit by_name(std::string_view name) {
  const auto parts = split(name, ':');
  const auto kind = parts[0];
  if (kind == "and" && parts.size() == 1) return and_gate();
  if (kind == "majority" && parts.size() == 1) return majority();
  if (kind == "and-chain" && parts.size() == 2) return and_chain(parse_count(parts[1], name));
  if (kind == "xor-only" && parts.size() == 2) return xor_only(parse_count(parts[1], name));
  if (kind == "random" && parts.size() == 5) {
    const std::size_t n = parse_count(parts[1], name);
    const std::size_t q = parse_count(parts[2], name);
    const std::size_t m = parse_count(parts[3], name);
    Rng rng(parse_count(parts[4], name));
    return random_circuit(rng, n, q, m, even_bounds(n));
  }
  throw std::invalid_argument("unknown sample circuit '" + std::string(name) + "'");
}

std::vector<std::string> sample_names() {
  return {"and", "majority", "and-chain:<depth>", "xor-only:<n>", "random:<n>:<q>:<m>:<seed>"};
}

}  // namespace trio::gen
