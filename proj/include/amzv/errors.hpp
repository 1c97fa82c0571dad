#pragma once

#include <stdexcept>
#include <string>

namespace amzv {

/// Thrown when a requested computation exceeds a configured enumeration or
/// table budget (field tables too large, enumeration too deep, escalation
/// cap reached).  The caller can retry with smaller parameters.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a result cannot be produced at the requested precision:
/// inverting a series that is zero to working precision, evaluating past a
/// certified tail window, and similar.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a runtime consistency guard fails.  Guards back facts the
/// algorithms rely on (strict valuation growth of power-sum layers,
/// interpolation consistency of solved polynomials), so a GuardError means
/// an internal bug rather than bad user input.
struct GuardError : std::logic_error {
    explicit GuardError(const std::string& msg) : std::logic_error(msg) {}
};

/// Thrown on malformed user input: CLI arguments, index grammar, JSON
/// payloads, or domain errors such as inverting zero.
struct UsageError : std::invalid_argument {
    explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace amzv
