#pragma once

#include <stdexcept>
#include <string>

namespace permpoly {

// Base class for all domain errors raised by this library. Precondition
// violations and resource-budget refusals both derive from it so callers
// (notably the CLI) can map every failure to one diagnostic line.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument: a documented precondition was violated.
struct InvalidArgumentError : Error {
    using Error::Error;
};

// mod_inverse on an element sharing a factor with the modulus.
struct NotInvertibleError : Error {
    using Error::Error;
};

// Linear system whose determinant shares a factor with the modulus.
struct SingularModMError : Error {
    using Error::Error;
};

// An enumeration or table would exceed the configured budget.
struct BudgetExceededError : Error {
    using Error::Error;
};

// Trial division hit its iteration cap before finishing.
struct FactorizationTooHardError : Error {
    using Error::Error;
};

// decompose() called on a polynomial that does not permute its ring.
struct NotAPermutationError : Error {
    using Error::Error;
};

// A value table fed to recovery is not induced by any polynomial.
struct NotPolynomialFunctionError : Error {
    using Error::Error;
};

// Recovery ran deeper than its configured recursion allowance.
struct RecursionBudgetExceededError : Error {
    using Error::Error;
};

// Interpolation nodes collide modulo p.
struct NodesNotDistinctModPError : Error {
    using Error::Error;
};

// More interpolation nodes than the small-degree method admits.
struct TooManyNodesError : Error {
    using Error::Error;
};

// A structural fact that is proven to hold failed re-verification.
// Seeing this exception means a defect in this library, not bad input.
struct TheoremViolationError : Error {
    using Error::Error;
};

}  // namespace permpoly
