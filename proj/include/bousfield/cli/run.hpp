#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bousfield::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kParseError = 2, kPrecondition = 3 };

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bousfield::cli
