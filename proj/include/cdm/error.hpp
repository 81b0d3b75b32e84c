#pragma once

#include <stdexcept>
#include <string>

namespace cdm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid or mismatched construction parameters (primes, label sets, radices).
struct ParameterError : Error {
  using Error::Error;
};

// A vertex/edge/extra label that does not exist in the parameters.
struct LabelError : Error {
  using Error::Error;
};

// A computation would exceed a configured size guard. Distinct from FAIL:
// a verifier must never report a counterexample because it ran out of budget.
struct BudgetError : Error {
  using Error::Error;
};

// A precondition on operation arguments was violated.
struct ContractError : Error {
  using Error::Error;
};

// A lattice/system operation needs a subgroup outside the declared family.
struct ClosureError : Error {
  using Error::Error;
};

// Concrete-syntax error (graph files, formula files); message carries position.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace cdm
