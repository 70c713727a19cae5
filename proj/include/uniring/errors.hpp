#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "uniring/types.hpp"

namespace uniring {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file (bad JSON, missing/unknown keys, wrong shapes).
struct SyntaxError : Error {
    using Error::Error;
};

// A value outside the declared domain Z_M.
struct DomainError : Error {
    using Error::Error;
};

// Bad relation expression: parse failure, unknown identifier, type mismatch,
// or evaluation failure (e.g. modulo by zero).
struct ExprError : Error {
    using Error::Error;
};

// The r and q relations overlap on a cycle of the shared locality structure,
// so the global predicates R and Q intersect at some ring size; such specs
// are rejected. Carries one witnessing cycle (vertex sequence, closed).
struct OverlapError : Error {
    std::vector<Value> cycle;

    OverlapError(const std::string& msg, std::vector<Value> witness)
        : Error(msg), cycle(std::move(witness)) {}
};

// Walk expansion was asked for a ring size the walk length does not divide.
struct DivisibilityError : Error {
    using Error::Error;
};

// The requested state space exceeds the configured exploration budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

} // namespace uniring
