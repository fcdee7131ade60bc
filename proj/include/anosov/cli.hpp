#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anosov {

// Exit codes: 0 = success, 1 = error (including usage), 2 = certificate
// failed, so scripts can branch on certification outcome.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anosov
