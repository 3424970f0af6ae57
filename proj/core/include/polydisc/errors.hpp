#pragma once

#include <stdexcept>
#include <string>

namespace polydisc {

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Coincident points where the objective is -infinity.
struct SingularConfiguration : std::domain_error {
  using std::domain_error::domain_error;
};

struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace polydisc
