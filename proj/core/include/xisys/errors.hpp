#pragma once

#include <stdexcept>
#include <string>

namespace xisys {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define XISYS_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                           \
    public:                                                               \
        using Error::Error;                                               \
        const char* kind() const noexcept override { return #Name; }      \
    }

XISYS_DEFINE_ERROR(PoleError);
XISYS_DEFINE_ERROR(DomainError);
XISYS_DEFINE_ERROR(RangeError);
XISYS_DEFINE_ERROR(ConvergenceError);
XISYS_DEFINE_ERROR(RegimeError);
XISYS_DEFINE_ERROR(SingularError);
XISYS_DEFINE_ERROR(TruncationError);
XISYS_DEFINE_ERROR(SolveError);
XISYS_DEFINE_ERROR(StepError);
XISYS_DEFINE_ERROR(ContourError);

#undef XISYS_DEFINE_ERROR

}  // namespace xisys
