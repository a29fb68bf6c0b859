#pragma once

#include <stdexcept>
#include <string>

namespace dcpath {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input admits no unique geometric answer (e.g. concentric equal circles).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A path or chain violates its structural invariants.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidCovering : public Error {
 public:
  using Error::Error;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

/// The discs meeting the segment leave a gap at abscissa `x` (frame coordinates).
class UncoveredGap : public Error {
 public:
  explicit UncoveredGap(double x)
      : Error("segment is not covered near x = " + std::to_string(x)), x_(x) {}
  double x() const { return x_; }

 private:
  double x_;
};

class NotDoublyCovered : public Error {
 public:
  using Error::Error;
};

class ConnectorNotFound : public Error {
 public:
  using Error::Error;
};

class EmptyGraph : public Error {
 public:
  using Error::Error;
};

class SnapFailed : public Error {
 public:
  using Error::Error;
};

class Unreachable : public Error {
 public:
  using Error::Error;
};

}  // namespace dcpath
