#pragma once

#include <stdexcept>
#include <string>

namespace coulomb {

// Every error carries a short stable name, used by the CLI on stderr.
class Error : public std::runtime_error {
public:
    Error(const char* name, const std::string& what)
        : std::runtime_error(what), name_(name) {}
    const char* name() const noexcept { return name_; }

private:
    const char* name_;
};

#define COULOMB_DEFINE_ERROR(cls, tag)                                   \
    class cls : public Error {                                           \
    public:                                                              \
        explicit cls(const std::string& what) : Error(tag, what) {}      \
    };

COULOMB_DEFINE_ERROR(DomainError, "domain_error")
COULOMB_DEFINE_ERROR(RegimeError, "regime_error")
COULOMB_DEFINE_ERROR(ParameterError, "parameter_error")
COULOMB_DEFINE_ERROR(ConvergenceError, "convergence_error")
COULOMB_DEFINE_ERROR(PoleError, "pole_error")
COULOMB_DEFINE_ERROR(LossOfZeroError, "loss_of_zero")
COULOMB_DEFINE_ERROR(NoSignChangeError, "no_sign_change")
COULOMB_DEFINE_ERROR(BracketFailure, "bracket_failure")
COULOMB_DEFINE_ERROR(ConditioningError, "conditioning_error")
COULOMB_DEFINE_ERROR(LengthMismatch, "length_mismatch")

#undef COULOMB_DEFINE_ERROR

}  // namespace coulomb
