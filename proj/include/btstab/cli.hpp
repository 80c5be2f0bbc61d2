#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace btstab {

// Command-line front end.  Returns the process exit code: 0 on success,
// 1 when a verification finds a mismatch, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace btstab
