#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fraisse::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kInconclusive = 3 };

inline constexpr const char* kVersion = "0.1.0";

/// Runs one command line (args[0] is the program name). Reports go to out,
/// diagnostics to err. The seed comes from --seed, else FRAISSE_SEED, else 1.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// FNV-1a 64-bit digest, as printed in report headers.
std::string digest(const std::string& bytes);

}  // namespace fraisse::cli
