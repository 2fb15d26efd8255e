#pragma once

#include <stdexcept>
#include <string>

namespace entityscore {

// Bad flag values, unknown languages, invalid policies. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files or reference data. Maps to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reference entity that cannot be scored (e.g. a pincode that is not six digits).
class ValidationError : public DataError {
 public:
  using DataError::DataError;
};

class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace entityscore
