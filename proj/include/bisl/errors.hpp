#pragma once

#include <stdexcept>
#include <string>

namespace bisl {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad curve specs, overlapping curves, origin outside the domain, ...
class GeometryError : public Error {
public:
  using Error::Error;
};

// Invalid run parameters (node counts, grids, tolerances).
class ConfigError : public Error {
public:
  using Error::Error;
};

// Kernel evaluated at a point where it (or a derivative) is singular.
class SingularEvalError : public Error {
public:
  using Error::Error;
};

// Field evaluation requested too close to a curve.
class NearBoundaryError : public Error {
public:
  NearBoundaryError(const std::string& msg, double distance)
      : Error(msg), distance(distance) {}
  double distance;
};

class LinearAlgebraError : public Error {
public:
  using Error::Error;
};

// The single-layer trace operator is (numerically) not invertible here.
class DegenerateScaleError : public Error {
public:
  DegenerateScaleError(const std::string& msg, double condition)
      : Error(msg), condition(condition) {}
  double condition;
};

class FitError : public Error {
public:
  using Error::Error;
};

} // namespace bisl
