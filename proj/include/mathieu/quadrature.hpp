#pragma once

// Thin wrappers over Boost.Math quadrature: adaptive Gauss-Kronrod with an
// absolute tolerance, tanh-sinh for algebraic endpoint singularities and
// exp-sinh for half-infinite ranges.

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace mathieu::quad {

struct result {
  double value = 0;
  double error = 0;
};

namespace detail {

struct gk_panel {
  double value = 0, err = 0, l1 = 0;
};

template <typename F>
gk_panel gk_apply(const F& f, double a, double b) {
  gk_panel p;
  p.value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 0, 0.0, &p.err, &p.l1);
  return p;
}

template <typename F>
void gk_recurse(const F& f, double a, double b, const gk_panel& whole, double abs_tol, int depth, result& acc) {
  // the Kronrod-Gauss difference cannot drop below the rounding floor of the panel
  const double floor = 64 * std::numeric_limits<double>::epsilon() * whole.l1;
  const bool tiny = !(b - a > 4 * std::numeric_limits<double>::epsilon() * std::abs(a));
  if (whole.err <= abs_tol || whole.err <= floor || depth <= 0 || tiny) {
    acc.value += whole.value;
    acc.error += whole.err;
    return;
  }
  double m = 0.5 * (a + b);
  auto left = gk_apply(f, a, m), right = gk_apply(f, m, b);
  // halving that does not shrink the estimate means the panel sits at its noise level
  if (!(left.err + right.err < whole.err)) {
    acc.value += left.value + right.value;
    acc.error += std::max(whole.err, left.err + right.err);
    return;
  }
  gk_recurse(f, a, m, left, 0.5 * abs_tol, depth - 1, acc);
  gk_recurse(f, m, b, right, 0.5 * abs_tol, depth - 1, acc);
}

}  // namespace detail

// adaptive bisection on the 10/21-point Gauss-Kronrod pair until the
// Kronrod-Gauss difference is below abs_tol on every panel
template <typename F>
result gauss_kronrod(const F& f, double a, double b, double abs_tol = 1e-12, int max_depth = 30) {
  result r;
  if (a == b) return r;
  detail::gk_recurse(f, a, b, detail::gk_apply(f, a, b), abs_tol, max_depth, r);
  return r;
}

template <typename F>
result tanh_sinh(const F& f, double a, double b, double rel_tol = 1e-12) {
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  result r;
  double l1 = 0;
  r.value = integrator.integrate(f, a, b, rel_tol, &r.error, &l1);
  return r;
}

// integral over [a, +inf)
template <typename F>
result half_line(const F& f, double a, double rel_tol = 1e-12) {
  thread_local boost::math::quadrature::exp_sinh<double> integrator;
  result r;
  double l1 = 0;
  r.value = integrator.integrate(f, a, std::numeric_limits<double>::infinity(), rel_tol, &r.error, &l1);
  return r;
}

// fixed 20-point Gauss-Legendre panel
template <typename F>
double gauss20(const F& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

// Gauss-Kronrod first; if the estimated error is still too large (typical for
// x^s-type endpoint behaviour) retry with tanh-sinh and keep the better one
template <typename F>
result robust(const F& f, double a, double b, double abs_tol = 1e-12) {
  result gk = gauss_kronrod(f, a, b, abs_tol, 25);
  if (gk.error <= abs_tol) return gk;
  result ts = tanh_sinh(f, a, b, 1e-13);
  return ts.error < gk.error ? ts : gk;
}

}  // namespace mathieu::quad
