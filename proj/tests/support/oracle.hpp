// Test-only reference quadrature, independent of the production rules.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>

namespace bisl::testing {

namespace detail {

template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Nested-refinement Simpson rule to absolute tolerance `tol`.
template <class F>
double adaptive_integrate(const F& f, double a, double b, double tol = 1e-13,
                          int max_depth = 52) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// int_0^2pi A(t) ln(4 sin^2((t-s)/2)) dt. The value A(s) is split off using
// the vanishing mean of the log factor; the remaining integrand is
// continuous at t = s.
template <class F>
double log_factor_integral(const F& a, double s, double tol = 1e-13) {
  const double as = a(s);
  auto g = [&](double t) {
    const double sn = 2.0 * std::sin(0.5 * (t - s));
    if (sn == 0.0) return 0.0;
    return (a(t) - as) * std::log(sn * sn);
  };
  const double pi = std::numbers::pi;
  return adaptive_integrate(g, s, s + pi, 0.5 * tol) +
         adaptive_integrate(g, s + pi, s + 2.0 * pi, 0.5 * tol);
}

} // namespace bisl::testing
