#ifndef SPECBOUND_ERRORS_HPP
#define SPECBOUND_ERRORS_HPP

//
// Error hierarchy. The CLI maps these onto exit codes:
// parse errors -> 2, math-domain errors -> 3, convergence failures -> 4.
//

#include <stdexcept>
#include <string>

namespace specbound {

// Input could not be parsed (files, weight strings, flags).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Request is outside the mathematical domain of the operation.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteError : DomainError {
    using DomainError::DomainError;
};

struct NonSquareError : DomainError {
    using DomainError::DomainError;
};

struct EmptySpectrumError : DomainError {
    using DomainError::DomainError;
};

struct OrderingLengthMismatchError : DomainError {
    using DomainError::DomainError;
};

// z = 0 passed to a bound that needs |z| > 0.
struct ZeroPointError : DomainError {
    using DomainError::DomainError;
};

// z within tolerance of the spectrum; resolvent bound undefined.
struct OnSpectrumError : DomainError {
    using DomainError::DomainError;
};

// Singular values incompatible with the weight at this truncation.
struct GaugeInfiniteError : DomainError {
    using DomainError::DomainError;
};

struct BadTruncationSizeError : DomainError {
    using DomainError::DomainError;
};

struct DegenerateRegionError : DomainError {
    using DomainError::DomainError;
};

// Certified series truncation could not be established within the
// configured term budget (weight decays too slowly for the argument).
struct TailNotConvergedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace specbound

#endif
