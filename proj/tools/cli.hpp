#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aggmd {

/// Runs the `aggmd` command line with `args` (program name excluded).
/// Returns the process exit code: 0 success, 1 usage, 2 numerical, 3 I/O.
/// Failures print a single `error: code=<n> kind=<kind> message="..."` line
/// to `err`.
int cli_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aggmd
