#pragma once

#include <iosfwd>

namespace fdlm {

/// Entry point of the `fdlm` command line tool.
/// Exit codes: 0 success, 1 numerical failure, 2 bad usage.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fdlm
