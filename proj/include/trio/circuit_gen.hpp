#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "trio/circuit.hpp"
#include "trio/rng.hpp"

namespace trio::gen {

/// Single AND of P1's wire 1 and P2's wire 2; P3 has no input.
Circuit and_gate();

/// AND(...AND(AND(x1, x2), x3)..., x_{depth+1}); inputs spread over the
/// three parties as evenly as possible.
Circuit and_chain(std::size_t depth);

/// XOR of all n >= 2 inputs, one output, zero AND depth.
Circuit xor_only(std::size_t n);

/// Majority of three single-bit inputs, one per party.
Circuit majority();

/// Random well-formed circuit. Operands are drawn uniformly among earlier
/// wires; each gate is AND with probability and_fraction.
Circuit random_circuit(Rng& rng, std::size_t n, std::size_t q, std::size_t m,
                       std::array<std::size_t, 3> party_bounds, double and_fraction = 0.5);

/// Party bounds splitting n inputs as evenly as possible.
std::array<std::size_t, 3> even_bounds(std::size_t n);

/// Builds a named sample circuit: "and", "majority", "and-chain:<d>",
/// "xor-only:<n>", "random:<n>:<q>:<m>:<seed>". Throws std::invalid_argument
/// for unknown names.
Circuit by_name(std::string_view name);

std::vector<std::string> sample_names();

}  // namespace trio::gen
