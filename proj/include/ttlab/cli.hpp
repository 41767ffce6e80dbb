#pragma once

#include <iosfwd>

namespace ttlab {

/// Runs one ttlab command line. Returns 0 on success or a verified result,
/// 1 on a mathematical negative (violation, relation, not carried, not
/// attracted, nothing found) and 2 on usage or input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ttlab
