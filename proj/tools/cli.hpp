#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vitfec::cli {

/// Runs the vitfec command line. `args` excludes the program name. Standard
/// input/output ("-" paths) are bound to `in` and `out`; diagnostics go to
/// `err` as a single line. Returns the process exit status.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace vitfec::cli
