#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rankaudit {

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Environment variable holding the default `serve --port`.
inline constexpr const char* kPortEnvVar = "RANKAUDIT_PORT";

// Entry point of the `rankaudit` tool. args[0] is the program name. Machine
// output goes to `out`, everything informational to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rankaudit
