#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jode::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Parses `args` (without the program name) and runs the chosen subcommand.
/// Summaries go to `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Help text of the top-level command, or of one subcommand.
[[nodiscard]] std::string help_text(const std::string& subcommand = {});

}  // namespace jode::cli
