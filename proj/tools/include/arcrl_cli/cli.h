#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arcrl::cli {

// Name of the environment variable that supplies the default --out directory.
inline constexpr const char* kOutDirEnv = "ARCRL_OUT_DIR";

/// Runs one `arcrl` invocation. `args` excludes the program name. Returns the
/// process exit code; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arcrl::cli
