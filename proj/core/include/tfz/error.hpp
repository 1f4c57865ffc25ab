#pragma once

#include <stdexcept>
#include <string>

namespace tfz {

/// Argument outside an operation's domain (bad parameters, out-of-radius evaluation).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to converge (quadrature, Newton, subdivision).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The argument principle could not be applied on a contour arc because the
/// field (nearly) vanishes on it.
class ContourError : public NumericalError {
public:
    ContourError(const std::string& what, double t0, double t1)
        : NumericalError(what), t0_(t0), t1_(t1) {}

    /// Offending arc, as parameter values along the contour.
    double arc_begin() const noexcept { return t0_; }
    double arc_end() const noexcept { return t1_; }

private:
    double t0_;
    double t1_;
};

/// A theorem's hypotheses are not met, so the requested bound does not apply.
class AssumptionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tfz
