#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lipbox::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kIdentityFailure = 1;
constexpr int kInputError = 2;
constexpr int kCapExceeded = 3;

// argv without the program name. Human-readable output goes to out, errors
// to err; --report FILE also writes the machine-readable report.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lipbox::cli
