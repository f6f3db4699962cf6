#pragma once
// Error types shared across the library. Every failure mode carries a stable
// machine-readable code (used by the CLI for exit-code-2 diagnostics) plus a
// human-readable message.

#include <stdexcept>
#include <string>
#include <utility>

namespace sshc {

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;  // stable identifier, e.g. "NonConvergence"
};

#define SSHC_DEFINE_ERROR(NAME)                                           \
    struct NAME : Error {                                                 \
        explicit NAME(const std::string& message) : Error(#NAME, message) {} \
    }

SSHC_DEFINE_ERROR(NonConvergence);      // QR iteration exceeded its sweep budget
SSHC_DEFINE_ERROR(DefectivePairing);    // left/right overlap ~ 0, eigenvectors coalesced
SSHC_DEFINE_ERROR(SingularMatrix);      // pivot collapse in a linear solve
SSHC_DEFINE_ERROR(StepUnderflow);       // adaptive integrator step shrank to nothing
SSHC_DEFINE_ERROR(UnsupportedOnsite);   // operation defined only without on-site terms
SSHC_DEFINE_ERROR(GapClosure);          // band gap closes on the sampling grid
SSHC_DEFINE_ERROR(NonQuantized);        // winding sum not near an integer multiple of 2pi
SSHC_DEFINE_ERROR(NoEdgePair);          // candidate states fail the edge-localization check
SSHC_DEFINE_ERROR(DegenerateCoupling);  // a coupling vanishes; localization constants blow up
SSHC_DEFINE_ERROR(SingularMiddleBlock); // middle-block matrix singular in the reduction

#undef SSHC_DEFINE_ERROR

}  // namespace sshc
