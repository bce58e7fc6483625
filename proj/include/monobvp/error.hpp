#pragma once

#include <stdexcept>
#include <string>

namespace monobvp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two mesh objects built on grids of different size were combined.
class GridMismatch : public Error {
 public:
  GridMismatch(int n_left, int n_right)
      : Error("grid mismatch: n=" + std::to_string(n_left) + " vs n=" + std::to_string(n_right)) {}
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// Registry lookup for a nonlinearity, forcing term or coefficient failed.
class UnknownId : public Error {
 public:
  UnknownId(const std::string& kind, const std::string& id)
      : Error("unknown " + kind + " id '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

/// An optional capability (partials, dominator, affine split) is absent.
class MissingCapability : public Error {
 public:
  using Error::Error;
};

class LineSearchFailure : public Error {
 public:
  LineSearchFailure(const std::string& what, int iteration, double certificate, double step)
      : Error(what), iteration_(iteration), certificate_(certificate), step_(step) {}
  int iteration() const noexcept { return iteration_; }
  double certificate() const noexcept { return certificate_; }
  double step() const noexcept { return step_; }

 private:
  int iteration_;
  double certificate_;
  double step_;
};

class OracleFailure : public Error {
 public:
  using Error::Error;
};

class UndefinedRatio : public Error {
 public:
  using Error::Error;
};

}  // namespace monobvp
