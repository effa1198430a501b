#pragma once

namespace wman {

// Entry point behind the wmansim binary. Returns the process exit code:
// 0 on success, 1 on runtime failures, 2 on usage errors.
int cli_main(int argc, const char* const* argv);

}  // namespace wman
