#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hdro {

// Runs the hetero-dro command line (args exclude the program name).
// Returns the process exit code: 0 ok, 2 invalid configuration,
// 3 bound-sandwich violation under --strict.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hdro
