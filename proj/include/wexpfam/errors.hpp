#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wexpfam {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the family's domain: x <= 0, mu <= 0, s == 0, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

// The requested expectation does not exist (existence condition violated).
class MomentUndefined : public Error {
 public:
  using Error::Error;
};

// The closed-form estimator is undefined on this sample; the message names
// the inequality that failed.
class EstimationFailed : public Error {
 public:
  using Error::Error;
};

class NonPositiveData : public Error {
 public:
  NonPositiveData(std::size_t index, double value)
      : Error("data point " + std::to_string(index) + " is not a positive finite real (" +
              std::to_string(value) + ")"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class EmptySample : public Error {
 public:
  using Error::Error;
};

// Numerical likelihood maximization did not converge; carries the last iterate.
class OptimizationFailed : public Error {
 public:
  OptimizationFailed(const std::string& what, double mu, double sigma)
      : Error(what + " (last iterate mu=" + std::to_string(mu) +
              ", sigma=" + std::to_string(sigma) + ")"),
        mu_(mu),
        sigma_(sigma) {}
  double last_mu() const { return mu_; }
  double last_sigma() const { return sigma_; }

 private:
  double mu_;
  double sigma_;
};

class BootstrapDegenerate : public Error {
 public:
  using Error::Error;
};

// Problem in a data or config file; line is 1-based.
class DataFileError : public Error {
 public:
  DataFileError(const std::string& path, long line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace wexpfam
