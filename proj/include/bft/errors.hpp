#ifndef BFT_ERRORS_HPP
#define BFT_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace bft {

// Bad input: momentum outside the dispersion domain, interval longer than the
// ring, alpha <= 0, and similar contract violations.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called on data that fails its declared precondition
// (e.g. a quench spec that does not validate).
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Principal-branch logarithm left its safe region and branch risk was not
// explicitly allowed by the caller.
class BranchRiskError : public std::runtime_error {
public:
    explicit BranchRiskError(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature or eigensolver failure. Carries the partial result so callers can
// inspect how far the computation got.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, std::complex<double> partial, double error_estimate)
        : std::runtime_error(what), partial_value(partial), error_estimate(error_estimate) {}

    std::complex<double> partial_value;
    double error_estimate;
};

} // namespace bft

#endif
