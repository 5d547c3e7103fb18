#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fatou {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Root finder gave up; carries the last iterate so callers can inspect it.
class RootFinderError : public ConvergenceError {
 public:
  RootFinderError(const std::string& what, std::vector<std::complex<double>> best)
      : ConvergenceError(what), best_(std::move(best)) {}

  const std::vector<std::complex<double>>& best_iterate() const noexcept { return best_; }

 private:
  std::vector<std::complex<double>> best_;
};

/// Degree bound for explicit composition exceeded.
class DegreeBoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace fatou
