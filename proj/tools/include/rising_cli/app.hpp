#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rising::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kInvariantViolation = 2,
};

// Entry point behind main(). `args` excludes the program name; `env_seed` is
// the value of RB_SEED when set. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_seed);

}  // namespace rising::cli
