#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seshadri::cli {

/// Exit codes: 0 decided (including Special and Empty), 2 Unknown, 1 usage
/// or input errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnknown = 2;

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seshadri::cli
