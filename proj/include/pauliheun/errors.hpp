#ifndef PAULIHEUN_ERRORS_HPP
#define PAULIHEUN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pauliheun {

// Flat space (kappa == 0) has no z = exp(i sqrt(kappa) r) chart; the
// finite-difference oracle handles that regime instead.
struct FlatSpaceError : std::domain_error {
    explicit FlatSpaceError(const std::string& msg) : std::domain_error(msg) {}
};

// No (label, gauge, root) combination passes the regularity filter
// Re(B) > 0, Re(C) > 0 (and Re(A) > 0 in the hyperbolic case).
struct NoAdmissibleBranch : std::domain_error {
    explicit NoAdmissibleBranch(const std::string& msg) : std::domain_error(msg) {}
};

// The five perfect-square relations failed to close for a chosen
// label/sign combination.
struct InconsistentBranch : std::domain_error {
    explicit InconsistentBranch(const std::string& msg) : std::domain_error(msg) {}
};

// Eigensolver failure (iteration cap, impossible level request, ...).
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pauliheun

#endif
