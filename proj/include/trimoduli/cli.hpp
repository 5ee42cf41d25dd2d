#pragma once

#include "trimoduli/scalar.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace trimoduli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { exit_ok = 0, exit_invalid_input = 1, exit_numerical = 2, exit_mismatch = 3 };

/// Runs one command. args excludes the program name. The JSON report goes to
/// out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Accepts "re" or "re,im", e.g. "-2" or "1.5,-0.25".
bool parse_complex(const std::string& text, Complex& value);

}  // namespace trimoduli
