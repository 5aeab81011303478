#pragma once

#include <stdexcept>
#include <string>

namespace d2dsec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative evaluation did not converge within its iteration cap.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double a, double x)
      : Error(what), a_(a), x_(x) {}

  double a() const noexcept { return a_; }
  double x() const noexcept { return x_; }

 private:
  double a_;
  double x_;
};

/// A design that carries no information power (gamma == 0).
class DegenerateDesign : public Error {
 public:
  using Error::Error;
};

/// The selection machinery was asked about a density below the threshold.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// The selection function does not change sign on the searched interval.
class NoCrossingError : public Error {
 public:
  NoCrossingError(const std::string& what, double d_lo, double f_lo,
                  double d_hi, double f_hi)
      : Error(what), d_lo_(d_lo), f_lo_(f_lo), d_hi_(d_hi), f_hi_(f_hi) {}

  double d_lo() const noexcept { return d_lo_; }
  double f_lo() const noexcept { return f_lo_; }
  double d_hi() const noexcept { return d_hi_; }
  double f_hi() const noexcept { return f_hi_; }

 private:
  double d_lo_, f_lo_, d_hi_, f_hi_;
};

/// An eavesdropper sits on the transmitter, where path loss diverges.
class ExcludedRegionError : public Error {
 public:
  using Error::Error;
};

/// A Monte-Carlo estimate has no trials to average over.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace d2dsec
