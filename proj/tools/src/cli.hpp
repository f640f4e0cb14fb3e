#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace zdgenus::cli {

enum ExitCode : int { kOk = 0, kRejected = 1, kInputError = 2, kFormatLimit = 3, kInconclusive = 4 };

/// "250", "20k", "3M"; nullopt for anything else (including 1e6 and 0).
std::optional<std::uint64_t> parse_budget(const std::string& text);

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zdgenus::cli
