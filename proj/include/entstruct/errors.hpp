#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entstruct {

// Bad user-supplied value (parameter outside its domain, invalid flag).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Dense-oracle size limit exceeded; only the closed-form path works beyond it.
struct OracleScaleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numeric integrity check failed (imaginary residue, non-finite value).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rejection sampling hit its attempt cap.
struct SamplingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the offending line number (1-based, 0 = header/unknown).
struct ParseError : std::runtime_error {
  ParseError(const std::string& path, std::size_t line_number, const std::string& detail)
      : std::runtime_error(path + ":" + std::to_string(line_number) + ": " + detail),
        line(line_number) {}
  std::size_t line;
};

// File metadata disagrees with the running code (e.g. stored class table).
struct CompatibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Training aborted (divergence, shape mismatch).
struct TrainingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace entstruct
