#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmsr {

/**
 * Runs one CLI invocation (`args` excludes the program name) against the
 * given streams and returns the process exit status. The binary's main()
 * is a thin wrapper, so tests drive the exact production code path.
 *
 * Subcommands: gen, encode, verify, repair, bounds, bench. Reports end
 * with machine-checkable `#CHECK` trailer lines that are stable across
 * runs for identical inputs.
 */
int cli_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cmsr
