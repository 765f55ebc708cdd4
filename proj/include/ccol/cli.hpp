#pragma once

// The ccol command line. Every run prints one JSON report to `out`.
// Exit codes: 0 success, 1 refuted or mismatched expectation, 2 usage or
// input error, 3 inconclusive (search budget, stall, uncertified floor).

#include <iosfwd>
#include <string>
#include <vector>

namespace ccol {

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccol
