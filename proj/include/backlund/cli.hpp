#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace backlund::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `backlund` tool. `args` excludes the program name.
///
///   backlund [--config FILE] dispersion|conjugate|verify [options]
///
/// A config file holds flat `key=value` lines whose keys are the long option
/// names of the chosen subcommand; options given on the command line win.
/// Returns 0 when every check passes, 1 on a failed check and 2 on a usage,
/// config or construction error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace backlund::cli
