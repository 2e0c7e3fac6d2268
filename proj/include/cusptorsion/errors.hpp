#ifndef CUSPTORSION_ERRORS_HPP
#define CUSPTORSION_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cusptorsion {

/// Bad input: domain violations, malformed weights, invalid geometry. CLI exit 2.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An internal invariant failed; indicates a bug or an inconsistent pipeline. CLI exit 3.
struct ConsistencyError : std::runtime_error {
  explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured resource bound (enumeration size, recursion depth) was exceeded. CLI exit 4.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical routine failed to reach its tolerance. CLI exit 3.
struct NumericsError : std::runtime_error {
  explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Casimir projection could not isolate a single irreducible summand.
struct AmbiguousProjectionError : ValidationError {
  explicit AmbiguousProjectionError(const std::string& msg) : ValidationError(msg) {}
};

}  // namespace cusptorsion

#endif  // CUSPTORSION_ERRORS_HPP
