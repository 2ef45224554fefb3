#pragma once

// Normalized Bessel function j_lambda(x) = J_lambda(x) / x^lambda, entire in x:
//   j_lambda(x) = 2^-lambda sum_k (-x^2/4)^k / (k! Gamma(k+lambda+1)).
// Power series (long double) up to the switch point, the Hankel large-argument
// expansion beyond it.

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>

#include "error.hpp"

namespace mathieu {

namespace detail {

inline long double bessel_j_series(long double lambda, long double x) {
  const long double q = -x * x / 4;
  long double term = 1 / std::tgamma(lambda + 1), sum = term, big = std::fabs(term);
  for (int k = 0; k < 1000; ++k) {
    term *= q / ((k + 1) * (k + 1 + lambda));
    sum += term;
    big = std::max(big, std::fabs(term));
    if (k > x && std::fabs(term) < 1e-22L * big) break;
  }
  return sum * std::pow(2.0L, -lambda);
}

// J_lambda(x) ~ sqrt(2/(pi x)) (P cos w - Q sin w), w = x - lambda pi/2 - pi/4,
// with a_k = prod_{j<=k} (4 lambda^2 - (2j-1)^2) / (k! 8^k). Returns {J, error estimate}.
inline std::pair<long double, long double> bessel_J_asym(long double lambda, long double x) {
  const long double m = 4 * lambda * lambda;
  long double P = 0, Q = 0, a = 1, prev = INFINITY, err = INFINITY;
  for (int k = 0; k < 200; ++k) {
    const long double term = a / std::pow(x, (long double)k);
    const long double mag = std::fabs(term);
    if (mag > prev && k > 1) break;  // optimal truncation of the divergent series
    const int s = (k / 2) % 2 ? -1 : 1;
    (k % 2 ? Q : P) += s * term;
    err = mag;
    if (mag < 1e-21L) break;
    prev = mag;
    const long double j = 2 * k + 1;
    a *= (m - j * j) / ((k + 1) * 8.0L);
    if (a == 0) {
      err = 0;
      break;
    }
  }
  const long double w = x - lambda * std::numbers::pi_v<long double> / 2 - std::numbers::pi_v<long double> / 4;
  const long double amp = std::sqrt(2 / (std::numbers::pi_v<long double> * x));
  return {amp * (P * std::cos(w) - Q * std::sin(w)), amp * err};
}

}  // namespace detail

inline double bessel_j(double lambda, double x, double switch_point = 12) {
  if (!(lambda > -1)) throw domain_error("bessel_j needs lambda > -1");
  if (!std::isfinite(x)) throw domain_error("bessel_j needs finite x");
  x = std::abs(x);  // even in x
  if (x <= switch_point) return double(detail::bessel_j_series(lambda, x));
  auto [J, err] = detail::bessel_J_asym(lambda, x);
  const long double scale = std::pow((long double)x, (long double)lambda);
  // the expansion is accurate when its smallest term is below ~1e-13 of the envelope
  if (err <= 1e-13L * std::sqrt(2 / (std::numbers::pi_v<long double> * x))) return double(J / scale);
  if (x <= 40) return double(detail::bessel_j_series(lambda, x));
  return double(boost::math::cyl_bessel_j((long double)lambda, (long double)x) / scale);
}

// j_lambda(0) = 1 / (2^lambda Gamma(lambda+1))
inline double bessel_j0_value(double lambda) { return std::pow(2.0, -lambda) / std::tgamma(lambda + 1); }

}  // namespace mathieu
