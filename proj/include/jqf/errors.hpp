#pragma once

#include <stdexcept>
#include <string>

namespace jqf {

// Operator/state dimension mismatch or invalid truncation.
class InvalidDimensionError : public std::invalid_argument {
 public:
  explicit InvalidDimensionError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Config file schema violation (unknown key, missing key, bad value).
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// Integrator trace drift beyond tolerance; retry with a smaller step.
class NonConvergenceError : public std::runtime_error {
 public:
  explicit NonConvergenceError(const std::string& what)
      : std::runtime_error(what) {}
};

// NaN/Inf encountered during propagation.
class NumericFailureError : public std::runtime_error {
 public:
  explicit NumericFailureError(const std::string& what)
      : std::runtime_error(what) {}
};

// Optimizer maximum sits on a bracket edge; message carries the scan table.
class BoundaryError : public std::runtime_error {
 public:
  explicit BoundaryError(const std::string& what) : std::runtime_error(what) {}
};

class InsufficientDataError : public std::invalid_argument {
 public:
  explicit InsufficientDataError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace jqf
