#pragma once

#include <iosfwd>

namespace tori {

// Exit codes: 0 ok, 1 bad input document or command line, 2 input violates
// a mathematical precondition or enumeration limit, 3 a check failed.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tori
