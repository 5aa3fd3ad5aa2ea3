#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptm::cli {

/// Runs the ptm command line. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`. Returns the process exit code:
/// 0 ok, 2 parse/usage, 3 domain membership, 4 non-convergence,
/// 5 verification failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ptm::cli
