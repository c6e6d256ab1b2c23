#pragma once

#include <stdexcept>
#include <string>

namespace robba {

// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Arithmetic asked for digits of a quantity that is zero (or indistinguishable
// from zero) at the precision carried by the operands.
struct PrecisionExhausted : Error {
  using Error::Error;
};

// Division by an element that is zero at its stated precision.
struct DivisionByZero : Error {
  using Error::Error;
};

// Square root requested of a unit whose residue is not a square.
struct NonResidue : Error {
  using Error::Error;
};

// Square root requested of an element of odd (irreducibly odd) valuation.
struct OddValuation : Error {
  using Error::Error;
};

// Logarithm/exponential route applied to something that is not a 1-unit.
struct NotPrincipalUnit : Error {
  using Error::Error;
};

// Residue image requested of a non-integral element.
struct NegativeValuation : Error {
  using Error::Error;
};

// Series/polynomial inversion requested of a non-unit.
struct NotAUnit : Error {
  using Error::Error;
};

// A computation would exceed the configured degree/size budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

// Both residues of a cocycle vanish at working precision.
struct IndeterminateClass : Error {
  using Error::Error;
};

// A blow-up coordinate chart degenerated (both projective coordinates zero).
struct DegeneratePoint : Error {
  using Error::Error;
};

// A point handed to the fiber formula does not lie on the expected fiber.
struct NotOnFiber : Error {
  using Error::Error;
};

// Weight outside the range a classifier routine is stated for.
struct WeightOutOfRange : Error {
  using Error::Error;
};

// An L-parameter placed in a regime a closed formula does not cover.
struct RegimeMismatch : Error {
  using Error::Error;
};

// Asymptotic parameters requested before the asymptotic regime applies.
struct RegimeNotReached : Error {
  using Error::Error;
};

// Harmonic-shift helper called with an odd argument.
struct OddArgument : Error {
  using Error::Error;
};

}  // namespace robba
