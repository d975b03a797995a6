#pragma once

#include <stdexcept>
#include <string>

namespace sdlab {

// Every failure in this library is a typed exception; nothing reports
// wrong answers silently.  Overflow in exact arithmetic throws rather
// than wrapping.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct OverflowError : Error {
    using Error::Error;
};

// Malformed JSON / CLI input.
struct ParseError : Error {
    using Error::Error;
};

// Structurally invalid parameters (zero multiplier, composite "prime", c outside (0,1), ...).
struct InvalidParams : Error {
    using Error::Error;
};

// Rational not in the character group described by the spec.
struct NotMember : Error {
    using Error::Error;
};

// Division inside the group is impossible (y/2 escapes the group).
struct NotDivisible : Error {
    using Error::Error;
};

// Evaluation outside a function's domain (e.g. phase needs a cyclic generator).
struct DomainError : Error {
    using Error::Error;
};

// Enumeration would exceed the configured point budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

// A checked precondition of a derived computation does not hold.
struct PreconditionViolated : Error {
    using Error::Error;
};

// Restriction to a cyclic subgroup is not periodic with the stated period.
struct NotPeriodic : Error {
    using Error::Error;
};

// A set that must be a subgroup (restricted to a box) is not closed.
struct ClosureViolation : Error {
    using Error::Error;
};

// An integer matrix does not define a homomorphism of the given finite group.
struct NotHomomorphism : Error {
    using Error::Error;
};

}  // namespace sdlab
