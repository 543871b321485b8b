#pragma once

#include <iosfwd>

namespace parcv {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitVerification = 3 };

// Subcommands: train, xval, bench, gen, verify. Output goes to `out` unless
// --output names a file; diagnostics go to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace parcv
