// errors.hpp: exception types shared by the tricycle library

#pragma once

#include <stdexcept>
#include <string>

namespace tricycle {

// Input outside the domain of an operation (negative temperature, s > 1, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A parameter set that violates a TricycleConfig invariant.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Quadrature, bracketing or root refinement did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A density vector left the physical set (negative population, |rho10|^2 > rho11 rho00).
class PositivityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tricycle
