#pragma once

#include <stdexcept>
#include <string>

namespace coxcert {

// Caller broke a documented precondition (bad shape, bad index, bad parity).
struct ContractViolation : std::invalid_argument {
  explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

// A construction step could not be certified (wrong kernel dimension,
// non-spacelike solution, empty search space). Distinct from ContractViolation
// so the CLI can map it to a verification-failure exit code.
struct CertificateFailure : std::runtime_error {
  explicit CertificateFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coxcert
