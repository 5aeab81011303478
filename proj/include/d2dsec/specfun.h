#pragma once

// Upper incomplete gamma function for shapes a in (0, 1], its inverse in the
// lower integration limit, and the complete gamma value.

namespace d2dsec::specfun {

struct NumericTolerance {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_iter = 500;

  /// Throws DomainError unless rel_tol > 0, abs_tol > 0, max_iter >= 1.
  void validate() const;
};

/// Gamma(a) for a in (0, 1].
double complete_gamma(double a, const NumericTolerance& tol = {});

/// Gamma(a, x) = integral from x to infinity of t^(a-1) e^(-t) dt.
///
/// Uses the power series of the lower function for x < a + 1 and a modified
/// Lentz continued fraction otherwise. Returns 0 once the result underflows.
/// Throws DomainError for a outside (0, 1] or x < 0, and NumericalFailure
/// (carrying a and x) when an expansion does not converge within max_iter.
double upper_incomplete_gamma(double a, double x,
                              const NumericTolerance& tol = {});

/// Solves Gamma(a, x) = target for x >= 0 by bracketed bisection.
///
/// Requires 0 < target <= Gamma(a); returns 0 when target equals Gamma(a).
double inverse_upper_incomplete_gamma(double a, double target,
                                      const NumericTolerance& tol = {});

}  // namespace d2dsec::specfun
