#pragma once

#include <stdexcept>
#include <string>

namespace bnm {

/// Cell outside the grid.
class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Move attempted with no budget left.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed map, trace or policy file. The message names the offending line
/// when one exists.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  FormatError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

/// Invalid parameters or an unusable combination of inputs.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite value reached the learner.
class NumericError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// InspectionState field outside its range.
class EncodingError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace bnm
