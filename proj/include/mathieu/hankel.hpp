#pragma once

// Hankel-type transform
//   F_m(h)(t) = int_0^inf h(x) x^{m-1} j_{m/2-1}(t x) dx
// by fixed Gauss panels of width <= pi/(2t), and the auxiliary kernels
//   g_{p,u}(x) = e^{-px}/x - e^{-ux}/(e^x-1),  g_{p,u}(0) = u + 1/2 - p
//   h_u(x) = x e^{-ux}/(e^x-1),                h_u(0) = 1
//   G_{p,u,mu}(x) = x g'_{p,u}(x) + (2mu-1) g_{p,u}(x)
// Near x = 0 the kernels use the generating function x e^{zx}/(e^x-1) = sum B_n(z) x^n/n!.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "accumulate.hpp"
#include "bessel.hpp"
#include "error.hpp"
#include "polyfun.hpp"
#include "quadrature.hpp"

namespace mathieu {

namespace detail {

constexpr double aux_series_cut = 0.5;
constexpr int aux_series_terms = 40;

inline double factorial_d(int n) { return std::tgamma(n + 1.0); }

}  // namespace detail

// h_u and its first derivative
inline double h_u(double u, double x) {
  if (std::abs(x) < detail::aux_series_cut) {
    double s = 0;
    for (int n = detail::aux_series_terms; n >= 0; --n) s += bernoulli_poly(n, -u) * std::pow(x, n) / detail::factorial_d(n);
    return s;
  }
  return x * std::exp(-u * x) / std::expm1(x);
}

inline double h_u_prime(double u, double x) {
  if (std::abs(x) < detail::aux_series_cut) {
    double s = 0;
    for (int n = detail::aux_series_terms; n >= 1; --n) s += bernoulli_poly(n, -u) * std::pow(x, n - 1) / detail::factorial_d(n - 1);
    return s;
  }
  // d/dx [x e^{-ux} / (e^x - 1)]
  const double e = std::expm1(x), ex = e + 1;
  return std::exp(-u * x) * ((1 - u * x) * e - x * ex) / (e * e);
}

// g_{p,u}(x) = (e^{-px} - h_u(x)) / x
inline double g_pu(double p, double u, double x) {
  if (std::abs(x) < detail::aux_series_cut) {
    double s = 0;
    for (int n = detail::aux_series_terms; n >= 1; --n)
      s += (std::pow(-p, n) - bernoulli_poly(n, -u)) * std::pow(x, n - 1) / detail::factorial_d(n);
    return s;
  }
  return std::exp(-p * x) / x - std::exp(-u * x) / std::expm1(x);
}

inline double g_pu_prime(double p, double u, double x) {
  if (std::abs(x) < detail::aux_series_cut) {
    double s = 0;
    for (int n = detail::aux_series_terms; n >= 2; --n)
      s += (std::pow(-p, n) - bernoulli_poly(n, -u)) * (n - 1) * std::pow(x, n - 2) / detail::factorial_d(n);
    return s;
  }
  const double e = std::expm1(x);
  return -std::exp(-p * x) * (p * x + 1) / (x * x) + std::exp(-u * x) * (u * e + e + 1) / (e * e);
}

inline double G_pum(double p, double u, double mu, double x) { return x * g_pu_prime(p, u, x) + (2 * mu - 1) * g_pu(p, u, x); }

struct hankel_options {
  double cutoff = INFINITY;                   // upper integration limit
  std::function<double(double)> envelope;     // bound on |h(x) x^power| used to place the cutoff
  double envelope_floor = 1e-16;
  int max_panels = 2'000'000;
};

// int_0^inf h(x) x^power j_lambda(t x) dx over panels of width <= pi/(2t)
inline double bessel_integral(const std::function<double(double)>& h, double power, double lambda, double t,
                              const hankel_options& opt = {}) {
  if (!(t > 0)) throw domain_error("the transform needs t > 0");
  double cutoff = opt.cutoff;
  if (!std::isfinite(cutoff)) {
    if (!opt.envelope) throw precondition_error("an infinite range needs a tail envelope");
    cutoff = 1;
    while (opt.envelope(cutoff) >= opt.envelope_floor) {
      cutoff *= 1.25;
      if (cutoff > 1e8) throw precondition_error("the tail envelope never falls below the floor");
    }
  }
  const double width = std::min(std::numbers::pi / (2 * t), 1.0);
  const long long panels = (long long)std::ceil(cutoff / width);
  if (panels > opt.max_panels) throw tolerance_error("too many quadrature panels");
  auto f = [&](double x) { return x == 0 ? (power == 0 ? h(0.0) * bessel_j(lambda, 0) : 0.0) : h(x) * std::pow(x, power) * bessel_j(lambda, t * x); };
  compensated_sum<double> s;
  // the first panel may carry an x^s endpoint singularity (in h or the power)
  const double w0 = cutoff / double(panels);
  s += quad::tanh_sinh(f, 0.0, w0, 1e-14).value;
  for (long long i = 1; i < panels; ++i) s += quad::gauss20(f, double(i) * w0, double(i + 1) * w0);
  return s.value();
}

// F_m(h)(t)
inline double hankel_transform(const std::function<double(double)>& h, double m, double t, const hankel_options& opt = {}) {
  if (!(m > 0)) throw domain_error("the transform order m must be positive");
  return bessel_integral(h, m - 1, m / 2 - 1, t, opt);
}

// sqrt(pi) / (2^{mu-1/2} Gamma(mu+1)), the constant of the Bessel representations of S_mu
inline double hankel_constant(double mu) {
  return std::sqrt(std::numbers::pi) / (std::pow(2.0, mu - 0.5) * std::tgamma(mu + 1));
}

}  // namespace mathieu
