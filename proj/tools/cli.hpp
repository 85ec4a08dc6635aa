#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace domecast::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

// Runs one command line. Documents go to `out` (or to files under --out);
// errors are a single JSON line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace domecast::cli
