#pragma once

#include <stdexcept>

namespace cyclefree {

// Bad arguments or malformed input files.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configured resource guard refused to run.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A checked internal property failed.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace cyclefree
