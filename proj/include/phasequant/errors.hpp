#ifndef PHASEQUANT_ERRORS_HPP
#define PHASEQUANT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace phasequant {

// Base for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: malformed expression, invalid config, nonsensical flags.
// CLI maps these to exit code 1.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Solver did not converge, degenerate turning point, bracket expansion
// exhausted. CLI maps these to exit code 2.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

// The physics says no: evaluation outside a potential's domain, no
// classically allowed region at an energy, allowed region running off the
// scan window. CLI maps these to exit code 3.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// No classically allowed region at the probed energy.
class NoCutError : public DomainError {
public:
    explicit NoCutError(const std::string& msg) : DomainError(msg) {}
};

// An allowed region reaches the scan window edge: not a bound state there.
class UnboundedError : public DomainError {
public:
    explicit UnboundedError(const std::string& msg) : DomainError(msg) {}
};

} // namespace phasequant

#endif
