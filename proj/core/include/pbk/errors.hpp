#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace pbk {

/// Raised when an argument violates a documented precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A finite-difference operator was handed fewer samples than its stencil needs.
class GridTooShort : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// A vacuum (or other reference vector) has zero norm, so relative residuals are meaningless.
class DegenerateInput : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// An integrand returned NaN or infinity at a quadrature node.
class NonFiniteSample : public std::runtime_error {
public:
    explicit NonFiniteSample(double location)
        : std::runtime_error("non-finite integrand sample at x = " + std::to_string(location)),
          location_(location) {}

    double location() const noexcept { return location_; }

private:
    double location_;
};

/// Adaptive quadrature hit its node cap; carries the last two estimates.
class QuadratureNonConvergence : public std::runtime_error {
public:
    QuadratureNonConvergence(std::complex<double> previous, std::complex<double> last, int nodes)
        : std::runtime_error("quadrature did not converge at " + std::to_string(nodes) + " nodes"),
          previous_(previous), last_(last), nodes_(nodes) {}

    std::complex<double> previous() const noexcept { return previous_; }
    std::complex<double> last() const noexcept { return last_; }
    int nodes() const noexcept { return nodes_; }

private:
    std::complex<double> previous_;
    std::complex<double> last_;
    int nodes_;
};

}  // namespace pbk
