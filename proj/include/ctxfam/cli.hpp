#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ctxfam {

/// Runs one subcommand. `args[0]` is the program name. Returns 0 when the
/// property holds, 1 when it is refuted and 2 on input errors. The verdict
/// is always the first line written to `out`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctxfam
