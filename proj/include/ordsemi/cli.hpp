#pragma once

// Command-line front end. Every subcommand writes one result record to
// `out` and diagnostics to `err`.
//
// Exit codes: 0 success, 1 usage, 2 parse error, 3 budget exhausted,
// 4 precondition violated (including backend mismatch and division by an
// enclosure that never leaves zero).

#include <iosfwd>
#include <string>
#include <vector>

namespace ordsemi::cli {

enum class Exit : int { Success = 0, Usage = 1, Parse = 2, Budget = 3, Precondition = 4 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ordsemi::cli
