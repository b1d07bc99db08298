#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expcut::cli {

// args excludes the program name. Exit codes: 0 ok, 1 check/translation failure, 2 parse/usage error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace expcut::cli
