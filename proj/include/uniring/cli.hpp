#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uniring::cli {

// Exit codes shared by all subcommands.
inline constexpr int exit_ok = 0;          // success / property holds
inline constexpr int exit_error = 1;       // bad input, I/O failure, budget
inline constexpr int exit_no_solution = 2; // synthesis failed / exists: no
inline constexpr int exit_refuted = 3;     // verification found a counterexample

// Runs the command-line driver in-process. args excludes the program name.
// Subcommands: synth, verify, exists, export-dot, export-promela.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace uniring::cli
