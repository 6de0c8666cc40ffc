#pragma once

namespace mesonet {

// Entry point behind the command-line binary, kept in the library so the
// subcommands can be exercised in-process by tests.  Returns the process
// exit code: 0 success, 1 runtime failure, 2 usage or parse error.
int run_cli(int argc, const char* const* argv);

}  // namespace mesonet
