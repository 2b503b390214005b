#pragma once

#include <stdexcept>
#include <string>

namespace cfprime {

/// Raised when a radicand is a perfect square; its root has no periodic part.
class SquareInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A period, segment or parameter grid outgrew its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters outside the domain of a family or formula.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A reachable-state invariant failed. Indicates a bug or corrupted state.
class InternalInvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace cfprime
