// Entry point of the command-line harness, split out from main() so the
// argument handling is linkable from tests.
#pragma once

namespace schedfree {

/// Full CLI: parses argv, dispatches to one of the subcommands
/// (run | sweep | bound | convert-momentum) and returns the process exit
/// code: 0 on success, 2 for configuration errors (unknown keys, malformed
/// inputs, empty grids), 3 when an optimization run diverges.
int cli_main(int argc, char** argv);

}  // namespace schedfree
