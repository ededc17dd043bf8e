#pragma once

#include <iosfwd>

namespace ordstat::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kSuccess = 0, kRuntimeError = 1, kUsageError = 2 };

/// Entry point of the `ordstat` tool with injectable streams.
/// Subcommands: sweep, table, estimate, ecdf.
int run(int argc, const char *const *argv, std::istream &in, std::ostream &out,
        std::ostream &err);

} // namespace ordstat::cli
