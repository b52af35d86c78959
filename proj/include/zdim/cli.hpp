#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zdim {

// Runs the zdim command line; args excludes the program name. Returns the
// process exit status: 0 ok, 1 domain error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zdim
