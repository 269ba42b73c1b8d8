#pragma once

#include <stdexcept>
#include <string>

namespace scenopt {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ---- scenario tree ----
class EmptyStageError : public Error {
 public:
  using Error::Error;
};
class UnreachableStateError : public Error {
 public:
  using Error::Error;
};
class DanglingTransitionError : public Error {
 public:
  using Error::Error;
};
class DuplicateStateError : public Error {
 public:
  using Error::Error;
};
class UnknownStateError : public Error {
 public:
  using Error::Error;
};

// ---- LP layer ----
class MalformedProblemError : public Error {
 public:
  using Error::Error;
};
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};
class InvalidNameError : public Error {
 public:
  using Error::Error;
};
class LPParseError : public Error {
 public:
  using Error::Error;
};

// ---- block model ----
class PrefixMismatchError : public Error {
 public:
  using Error::Error;
};
class WidthMismatchError : public Error {
 public:
  using Error::Error;
};
class CoverageError : public Error {
 public:
  using Error::Error;
};
class ShapeMismatchError : public Error {
 public:
  using Error::Error;
};
class RangeError : public Error {
 public:
  using Error::Error;
};

// ---- scalarization ----
class NonpositiveWeightError : public Error {
 public:
  using Error::Error;
};
class NotOptimalError : public Error {
 public:
  using Error::Error;
};
class InfeasibleInputError : public Error {
 public:
  using Error::Error;
};

// ---- moving horizon ----
class FirstStageInfeasibleError : public Error {
 public:
  using Error::Error;
};

// ---- case study / configuration ----
class InvalidInstanceError : public Error {
 public:
  using Error::Error;
};
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace scenopt
