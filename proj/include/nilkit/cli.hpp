#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilkit {

/// Runs one `nilkit` invocation. `args` excludes the program name. Results
/// go to `out` as `key: value` lines, diagnostics to `err`.
///
/// Exit status: 0 computed, 1 negative decision (not conjugate, empty
/// intersection, not a member, no preimage, inconsistent presentation),
/// 2 usage, input or internal error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace nilkit
