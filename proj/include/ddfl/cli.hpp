#pragma once

namespace ddfl {

// Full command dispatcher. Returns the process exit code: 0 on success or
// TimeLimit, 2 on invalid input (bad flags, unreadable files, guard
// violations), 3 on internal faults.
int run_cli(int argc, const char* const* argv);

}  // namespace ddfl
