#pragma once

#include <stdexcept>
#include <string>

namespace lrrc {

// Caller handed us something outside an operation's documented domain.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Vectors of mismatched length fed to the GF(2) kernel.
struct DimensionError : PreconditionError {
  using PreconditionError::PreconditionError;
};

// Repair request that breaks the protocol (helper overlaps U or the failed
// node, wrong helper count, ...).
struct ProtocolViolationError : PreconditionError {
  using PreconditionError::PreconditionError;
};

// A bounded enumeration would exceed its caller-supplied budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No finite tradeoff point exists (all cut coefficients zero).
struct UnprotectableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A table / family / scheme could not be built from the given pieces.
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A witness search finished its (proof-sized) budget without a find. Reaching
// this contradicts a proposition and is treated as a finding, not a normal
// failure.
struct SearchExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal guarantee the constructions rely on did not hold (e.g. the CA
// repair found no eligible packet). Same severity as SearchExhaustedError.
struct InvariantViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lrrc
