#pragma once

#include <ostream>
#include <span>
#include <string>

namespace qgames {

// Entry point of the qgames tool, minus the program name. Exit codes: 0 success,
// 1 verification failure, 2 input error.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qgames
