// Failures that mean "the numbers did not come out", as opposed to bad input.
#pragma once

#include <stdexcept>
#include <string>

namespace cjl {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when zeta_0 changes sign inside the left interval.
struct BreakpointError : NumericalError {
    BreakpointError(const std::string& what, double t_change)
        : NumericalError(what), t_change(t_change) {}
    double t_change;
};

struct ResidualError : NumericalError {
    ResidualError(const std::string& what, double residual, double target)
        : NumericalError(what), residual(residual), target(target) {}
    double residual;
    double target;
};

}  // namespace cjl
