#pragma once

#include <iosfwd>
#include <string>

#include "symcap/ebk.hpp"

namespace symcap {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitVerification = 1, kExitInput = 2 };

/// Parses "oscillator:w1,w2,..", "power:a" (dimension n) or "table:<file>".
ActionHamiltonian parse_k_spec(const std::string& spec, int n);

/// Runs one subcommand (spectrum, capacity, squeeze, maslov, ebk, flow,
/// selftest). Global flags --hbar --tol --seed --samples --format --out can
/// also come from SYMCAP_HBAR, SYMCAP_TOL, ... ; flags win.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symcap
