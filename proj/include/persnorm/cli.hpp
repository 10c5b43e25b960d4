#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace persnorm {

/// Exit codes: 0 success, 1 input error (bad flags, unreadable or malformed
/// files, invalid parameters), 2 internal error.
int cli_main(int argc, char** argv);

/// Same, with explicit argument vector (argv[0] excluded) and streams; used
/// by tests.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace persnorm
