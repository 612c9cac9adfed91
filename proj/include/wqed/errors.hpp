// errors.hpp — Exception types shared across the library

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace wqed {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct InvalidBranch : std::domain_error {
    using std::domain_error::domain_error;
};

// Iteration failed to converge; carries the last iterate for diagnosis.
struct NonConvergence : std::runtime_error {
    std::complex<double> last_iterate;
    NonConvergence(const std::string& msg, std::complex<double> last)
        : std::runtime_error(msg), last_iterate(last) {}
};

struct TruncationNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ComputeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivergentError : std::domain_error {
    using std::domain_error::domain_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace wqed
