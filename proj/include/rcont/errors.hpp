#pragma once

#include <stdexcept>
#include <string>

namespace rcont {

// Precondition failures are reported through this small hierarchy so callers
// (and the CLI exit-code mapping) can tell the categories apart.

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EmptySetError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Unwindowed evaluation of a map whose values may be unbounded.
struct WindowRequired : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MissingOracle : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnknownOperator : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct UnboundedExcess : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rcont
