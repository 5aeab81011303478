#pragma once

// Reference computations used only by tests. They share no code path with the
// library: incomplete gamma comes from direct quadrature, optima from
// bisection or grid search on the forward probabilities.

#include <cmath>
#include <functional>

namespace oracle {

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

/// Gamma(a, x) by quadrature. With t = u^(1/a) the integrand becomes
/// exp(-u^(1/a)) / a, which is bounded at the origin.
inline double upper_gamma(double a, double x) {
  const double lo = std::pow(x, a);
  const double hi = std::pow(x + 60.0, a);
  // Split the range so the adaptive rule sees the decay near the lower end.
  const double mid = std::pow(x + 2.0, a);
  auto f = [a](double u) { return std::exp(-std::pow(u, 1.0 / a)) / a; };
  return integrate(f, lo, mid, 1e-15) + integrate(f, mid, hi, 1e-15);
}

/// Root of a monotone function g on [lo, hi] by plain bisection.
inline double bisect(const std::function<double(double)>& g, double lo, double hi,
                     int iterations = 200) {
  const bool rising = g(hi) > g(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((g(mid) > 0.0) == rising) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
