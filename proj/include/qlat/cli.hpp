#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and help to `err`. Returns 0 on success, 2 when a check found
/// violations, 1 on usage, domain, format or resource errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qlat::cli
