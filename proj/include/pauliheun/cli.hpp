#ifndef PAULIHEUN_CLI_HPP
#define PAULIHEUN_CLI_HPP

// Command-line front end: reduce, spectrum, check-poly, oracle, compare,
// verify.  Output goes to `out` unless --output is given; payloads are
// byte-identical for identical configurations.
//
// Exit codes: 0 ok, 1 verification failure, 2 domain error, 3 solver
// error, 64 usage.

#include <iosfwd>
#include <string>
#include <vector>

namespace pauliheun::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pauliheun::cli

#endif
