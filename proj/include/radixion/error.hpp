#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace radixion {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (integers, element or polynomial encodings).
class parse_error : public error {
 public:
  using error::error;
};

/// Inputs that parse but violate a structural requirement: dimension
/// mismatch, wrong digit count, duplicate residues, missing zero digit.
class configuration_error : public error {
 public:
  using error::error;
};

/// The polynomial does not define an admissible base (|c0| < 2, a conjugate
/// of modulus <= 1, non-monic).
class invalid_base_error : public error {
 public:
  using error::error;
};

/// Root finding or an iterative eigenvalue computation failed.
class numeric_error : public error {
 public:
  using error::error;
};

/// A configured enumeration or size cap would be exceeded.
class resource_error : public error {
 public:
  using error::error;
};

/// A fixed-width exact integer left its range. Raised instead of wrapping.
class overflow_error : public resource_error {
 public:
  using resource_error::resource_error;
};

/// An element has no finite expansion; carries the encoded cycle.
class cycle_error : public error {
 public:
  explicit cycle_error(std::vector<std::string> cycle)
      : error("expansion enters a nonzero cycle at (" + (cycle.empty() ? std::string() : cycle.front()) + ")"),
        cycle_(std::move(cycle)) {}

  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

}  // namespace radixion
