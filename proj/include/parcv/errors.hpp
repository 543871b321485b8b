#pragma once

#include <stdexcept>

namespace parcv {

// Malformed or inconsistent input data (bad file, missing cell, schema clash).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal cross-check failed: two computation routes that must agree did not.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace parcv
