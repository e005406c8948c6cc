#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace relce::cli {

/// Exit codes: the mathematics said yes / said no / the input was bad.
enum ExitCode : int { kOk = 0, kVerifiedFailure = 1, kInputError = 2 };

struct CliContext {
    std::ostream& out;
    std::ostream& err;
    /// Value of RELCE_SCAN_CAP, if set. Passed in so runs stay reproducible
    /// from the invocation alone.
    std::optional<std::string> scan_cap_env;
};

/// Runs one invocation. `args` excludes the program name. Every result,
/// including errors, is a single JSON object on ctx.out (or --out).
int run_cli(const std::vector<std::string>& args, const CliContext& ctx);

}  // namespace relce::cli
