#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fraclamb/function_model.hpp"

namespace fraclamb::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    kSuccess = 0,
    kCheckFailed = 1,    // residual above threshold or a selftest check failed
    kUsageError = 2,     // malformed flags, selectors, windows or input files
    kNumericalError = 3, // a numerical operation raised
};

/// Parses `name(:key=value)*` with names exp, gauss_tail, shifted_gaussian.
/// Omitted keys default to lambda = 1, c = 0, sigma = 1. Throws ParseError
/// naming the offending token.
TestFamilyMember parse_function(std::string_view selector);

/// Full command-line entry point (argv[0] is the program name). Data goes to
/// `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fraclamb::cli
