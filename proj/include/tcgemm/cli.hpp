#pragma once

#include <iosfwd>

namespace tcgemm {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2 };

/// Entry point of the `tcgemm` tool; subcommands gen-map, gemm, verify,
/// bench and sim. Results go to `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tcgemm
