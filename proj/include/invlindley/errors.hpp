#pragma once

#include <stdexcept>
#include <string>

namespace invlindley {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed or unusable input data (files, configs, CLI values).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative solver or bracketing search failed.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The Lindley expansion produced a non-positive bracket (ELF inversion impossible).
class ApproximationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace invlindley
