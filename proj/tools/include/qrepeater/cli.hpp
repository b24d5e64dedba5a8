#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qrep::cli {

enum ExitCode : int { kOk = 0, kUsageOrValidation = 1, kVerifyFailed = 2 };

// Runs one `qrep` invocation. args excludes the program name. Results go to
// `out` (or --output), diagnostics and the resolved configuration to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrep::cli
