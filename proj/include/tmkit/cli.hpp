#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tmkit::cli {

/// Exit statuses. Stable; scripts depend on them.
enum Exit : int { kOk = 0, kDiagnostics = 1, kUsage = 2, kLimit = 3 };

/// `args` excludes the program name. Machine output goes to `out`, prose to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace tmkit::cli
