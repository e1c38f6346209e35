#pragma once

#include <stdexcept>
#include <string>

namespace hyptype {

// Malformed or contract-violating input (exit code 2 at the CLI).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance exceeds a desk-scale search bound (exit code 3 at the CLI).
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constructive procedure failed on input that satisfied its precondition.
// Always indicates a bug or a violated structural claim; never a verdict.
class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyptype
