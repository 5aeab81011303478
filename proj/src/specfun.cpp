#include "d2dsec/specfun.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "d2dsec/errors.h"

namespace d2dsec::specfun {

namespace {

// Below this, exp() underflows to zero.
constexpr double kLogUnderflow = -745.0;

void check_shape(double a) {
  if (!(a > 0.0 && a <= 1.0)) {
    std::ostringstream os;
    os << "gamma shape a=" << a << " outside (0, 1]";
    throw DomainError(os.str());
  }
}

[[noreturn]] void fail(const char* what, double a, double x) {
  std::ostringstream os;
  os << what << " did not converge for a=" << a << ", x=" << x;
  throw NumericalFailure(os.str(), a, x);
}

// Per-step stopping threshold: a tenth of the requested accuracy, never
// finer than double resolution.
double step_tolerance(const NumericTolerance& tol) {
  return std::max(0.1 * tol.rel_tol, 4.0 * std::numeric_limits<double>::epsilon());
}

// Gamma(a) minus the lower incomplete gamma sum x^n / (a (a+1) ... (a+n)).
// Terms are tested against the difference, which is what gets returned.
double upper_by_series(double a, double x, double full, const NumericTolerance& tol) {
  const double prefactor = std::exp(a * std::log(x) - x);
  const double step = step_tolerance(tol);
  double denom = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n <= tol.max_iter; ++n) {
    denom += 1.0;
    term *= x / denom;
    sum += term;
    const double value = full - sum * prefactor;
    if (term * prefactor <= step * std::abs(value) ||
        term <= std::numeric_limits<double>::epsilon() * sum) {
      return value > 0.0 ? value : 0.0;
    }
  }
  fail("incomplete gamma series", a, x);
}

// Continued fraction for Gamma(a, x), modified Lentz.
double upper_fraction(double a, double x, const NumericTolerance& tol) {
  constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= tol.max_iter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) <= step_tolerance(tol)) {
      return std::exp(a * std::log(x) - x) * h;
    }
  }
  fail("incomplete gamma continued fraction", a, x);
}

}  // namespace

void NumericTolerance::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_iter < 1) {
    throw DomainError("numeric tolerance requires rel_tol > 0, abs_tol > 0, max_iter >= 1");
  }
}

double complete_gamma(double a, const NumericTolerance& tol) {
  tol.validate();
  check_shape(a);
  return std::tgamma(a);
}

double upper_incomplete_gamma(double a, double x, const NumericTolerance& tol) {
  tol.validate();
  check_shape(a);
  if (!(x >= 0.0)) {
    std::ostringstream os;
    os << "incomplete gamma argument x=" << x << " is negative";
    throw DomainError(os.str());
  }
  if (x == 0.0) return complete_gamma(a, tol);
  if (std::isinf(x)) return 0.0;

  if (x < a + 1.0) {
    return upper_by_series(a, x, complete_gamma(a, tol), tol);
  }
  // The prefactor x^a e^-x bounds the result from above for a <= 1.
  if (a * std::log(x) - x < kLogUnderflow) return 0.0;
  return upper_fraction(a, x, tol);
}

double inverse_upper_incomplete_gamma(double a, double target, const NumericTolerance& tol) {
  tol.validate();
  check_shape(a);
  const double full = complete_gamma(a, tol);
  if (!(target > 0.0) || target > full) {
    std::ostringstream os;
    os << "inverse incomplete gamma target " << target << " outside (0, " << full << "]";
    throw DomainError(os.str());
  }
  if (target == full) return 0.0;

  int iter = 0;
  double lo = 0.0;
  double hi = 1.0;
  while (upper_incomplete_gamma(a, hi, tol) >= target) {
    lo = hi;
    hi *= 2.0;
    if (++iter > tol.max_iter) fail("inverse incomplete gamma bracketing", a, target);
  }

  // Bisect to full double resolution; the bracket always holds the root.
  for (; iter <= tol.max_iter; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return mid;
    const double value = upper_incomplete_gamma(a, mid, tol);
    if (value == target) return mid;
    if (value > target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      return lo + 0.5 * (hi - lo);
    }
  }
  fail("inverse incomplete gamma bisection", a, target);
}

}  // namespace d2dsec::specfun
