#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gflat {

// Runs one CLI invocation.  Structured output goes to `out`,
// diagnostics to `err`.  Exit codes: 0 success / consistent verdict,
// 1 hypothesis-failure verdict or failed verification suite,
// 2 usage or parse error, 3 numerical evaluation error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gflat
