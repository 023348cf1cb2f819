#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nsurf::cli {

enum Exit { kOk = 0, kUsage = 1, kInvalidInput = 2, kResourceLimit = 3, kInternal = 4 };

// Runs one command line (args excludes the program name). Reports go to out,
// diagnostics to err; artifacts and manifest.json go to --out when given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(const std::string& bytes);

}  // namespace nsurf::cli
