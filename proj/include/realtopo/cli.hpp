#pragma once

#include <ostream>

namespace realtopo {

/// Exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // verdict or property failure
  kExitParse = 2,
  kExitUnnormalizable = 3,
  kExitUsage = 4,
};

/// Subcommands: analyze, witness, surjection, fixture, fuzz.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace realtopo
