#pragma once

namespace pedsafe::cli {

// Entry point behind the `pedsafe` binary; returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace pedsafe::cli
