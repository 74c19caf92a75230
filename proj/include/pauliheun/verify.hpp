#ifndef PAULIHEUN_VERIFY_HPP
#define PAULIHEUN_VERIFY_HPP

// Self-contained property suites behind the `verify` CLI command.  Each
// check re-derives its expectation independently (dense determinants,
// finite differences, closed forms) and reports pass/fail with a short
// detail string.

#include <string>
#include <vector>

namespace pauliheun::verify {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<CheckResult> run_all_checks();

}  // namespace pauliheun::verify

#endif
