#pragma once

#include <array>
#include <iosfwd>
#include <string_view>

#include "trio/bits.hpp"
#include "trio/circuit.hpp"

namespace trio {

/// Exit codes of the trio executable.
inline constexpr int kExitAccept = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAbort = 2;

/// Parses "p1:<bits>,p2:<bits>,p3:<bits>"; omitted parties get empty input.
/// Throws std::invalid_argument on malformed literals.
std::array<BitString, 3> parse_inputs(std::string_view text);

/// Entry point behind the executable: subcommands run, attack, bench and
/// gen-circuit. Setting TRIO_TRACE=1 writes the transport trace to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trio
