#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace csf::cli {

/// Exit codes: 0 success, 1 failed assertion or evaluation error, 2 usage or
/// spec error. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace csf::cli
