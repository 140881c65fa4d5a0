#pragma once

#include <iosfwd>

namespace arls {

/// Entry point behind the `arls` binary; split out so tests can run
/// subcommands in-process. Returns the process exit code: 0 success,
/// 1 configuration or I/O error, 2 completed track with no object detected.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace arls
