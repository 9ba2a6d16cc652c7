#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ann {

// Bad argument values (shape mismatches, out-of-range parameters).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input data (CSV parse failures, missing labels, ...).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A generator spec that cannot be satisfied within its rejection budget.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative solver ran out of budget; carries the worst residual seen so the
// caller can report it instead of silently accepting a wrong answer.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double worst_residual)
        : std::runtime_error(what), worst_residual_(worst_residual) {}

    double worst_residual() const noexcept { return worst_residual_; }

private:
    double worst_residual_;
};

}  // namespace ann
