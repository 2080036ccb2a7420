#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ramf::cli {

// Runs one subcommand; args excludes the program name. Returns the exit code:
// 0 success or PASS, 2 FAIL, 1 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ramf::cli
