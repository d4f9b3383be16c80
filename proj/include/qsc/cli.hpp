#pragma once

namespace qsc {

// Full command-line front end; returns the process exit code
// (0 success, 1 acceptance failure, 2 invalid input, 3 numerical failure).
int cli_main(int argc, const char* const* argv);

} // namespace qsc
