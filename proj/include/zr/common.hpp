#ifndef ZR_COMMON_HPP
#define ZR_COMMON_HPP

#include <stdexcept>
#include <string>

namespace zr {

inline constexpr const char* kVersion = "0.1.0";

// Error taxonomy. Exit-code mapping lives in the CLI: ParamError and its
// siblings are validation failures (exit 1), anything else is a runtime
// failure (exit 2).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamError : Error {
  using Error::Error;
};

// Mismatched lattice windows / array shapes.
struct ShapeError : Error {
  using Error::Error;
};

// Test-function support escaping the lattice window image.
struct SupportError : Error {
  using Error::Error;
};

// Enumerated state space above the configured cap.
struct SizeError : Error {
  using Error::Error;
};

// Degenerate statistical input (zero-variance series, singular fits).
struct DegeneracyError : Error {
  using Error::Error;
};

struct NumericError : Error {
  using Error::Error;
};

}  // namespace zr

#endif
