#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace udw {

// Base of the library's error taxonomy. kind() is the short tag written
// into error rows of scan output.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define UDW_ERROR(Name)                                                  \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(#Name, what) {}   \
    }

UDW_ERROR(CoincidenceLimit);
UDW_ERROR(ConventionError);
UDW_ERROR(DegeneratePhase);
UDW_ERROR(ConstraintError);
UDW_ERROR(TimelikeViolation);
UDW_ERROR(EmptyAdmissibleSet);
UDW_ERROR(InequalityViolation);
UDW_ERROR(InvalidArgument);
UDW_ERROR(ConfigError);
UDW_ERROR(IoError);

#undef UDW_ERROR

class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& what, std::complex<double> partial, double estimate)
        : Error("QuadratureFailure", what), partial_(partial), estimate_(estimate) {}
    std::complex<double> partial() const noexcept { return partial_; }
    double estimate() const noexcept { return estimate_; }

private:
    std::complex<double> partial_;
    double estimate_;
};

}  // namespace udw
