#pragma once

// Truncated Taylor arithmetic. A jet of order n holds c[k] = f^(k)(x0)/k!,
// k = 0..n. Generic lambdas written with unqualified exp/log/pow work on both
// plain reals and jets.

#include <cmath>
#include <cstddef>
#include <vector>

#include "error.hpp"

namespace mathieu {

template <typename Real>
class jet {
 public:
  jet() = default;
  explicit jet(int order, Real v = Real(0)) : c_(std::size_t(order) + 1, Real(0)) { c_[0] = v; }

  static jet variable(Real x0, int order) {
    jet r(order, x0);
    if (order >= 1) r.c_[1] = Real(1);
    return r;
  }
  static jet constant(Real v, int order) { return jet(order, v); }

  int order() const { return int(c_.size()) - 1; }
  Real value() const { return c_[0]; }
  Real coeff(int k) const { return c_[std::size_t(k)]; }
  Real& coeff(int k) { return c_[std::size_t(k)]; }
  const std::vector<Real>& coeffs() const { return c_; }

  Real deriv(int k) const {
    Real f = Real(1);
    for (int i = 2; i <= k; ++i) f *= Real(i);
    return c_[std::size_t(k)] * f;
  }

  jet operator-() const {
    jet r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  jet& operator+=(const jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  jet& operator-=(const jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  jet& operator+=(Real v) {
    c_[0] += v;
    return *this;
  }
  jet& operator-=(Real v) {
    c_[0] -= v;
    return *this;
  }
  jet& operator*=(Real v) {
    for (auto& x : c_) x *= v;
    return *this;
  }
  jet& operator/=(Real v) {
    for (auto& x : c_) x /= v;
    return *this;
  }

  jet& operator*=(const jet& o) {
    const int n = order();
    std::vector<Real> r(c_.size(), Real(0));
    for (int k = 0; k <= n; ++k)
      for (int j = 0; j <= k; ++j) r[k] += c_[j] * o.c_[k - j];
    c_ = std::move(r);
    return *this;
  }

  jet& operator/=(const jet& b) {
    const int n = order();
    if (b.c_[0] == Real(0)) throw domain_error("jet division by a series vanishing at the base point");
    std::vector<Real> q(c_.size(), Real(0));
    for (int k = 0; k <= n; ++k) {
      Real s = c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * q[k - j];
      q[k] = s / b.c_[0];
    }
    c_ = std::move(q);
    return *this;
  }

 private:
  std::vector<Real> c_;
};

template <typename R> jet<R> operator+(jet<R> a, const jet<R>& b) { return a += b; }
template <typename R> jet<R> operator-(jet<R> a, const jet<R>& b) { return a -= b; }
template <typename R> jet<R> operator*(jet<R> a, const jet<R>& b) { return a *= b; }
template <typename R> jet<R> operator/(jet<R> a, const jet<R>& b) { return a /= b; }

template <typename R> jet<R> operator+(jet<R> a, R v) { return a += v; }
template <typename R> jet<R> operator+(R v, jet<R> a) { return a += v; }
template <typename R> jet<R> operator-(jet<R> a, R v) { return a -= v; }
template <typename R> jet<R> operator-(R v, const jet<R>& a) { return (-a) += v; }
template <typename R> jet<R> operator*(jet<R> a, R v) { return a *= v; }
template <typename R> jet<R> operator*(R v, jet<R> a) { return a *= v; }
template <typename R> jet<R> operator/(jet<R> a, R v) { return a /= v; }
template <typename R> jet<R> operator/(R v, const jet<R>& a) { return jet<R>(a.order(), v) /= a; }

template <typename R>
jet<R> exp(const jet<R>& a) {
  const int n = a.order();
  jet<R> e(n);
  e.coeff(0) = std::exp(a.coeff(0));
  for (int k = 1; k <= n; ++k) {
    R s = R(0);
    for (int j = 1; j <= k; ++j) s += R(j) * a.coeff(j) * e.coeff(k - j);
    e.coeff(k) = s / R(k);
  }
  return e;
}

// exp(a) - 1 with the constant term taken from expm1
template <typename R>
jet<R> expm1(const jet<R>& a) {
  jet<R> e = exp(a);
  e.coeff(0) = std::expm1(a.coeff(0));
  return e;
}

template <typename R>
jet<R> log(const jet<R>& a) {
  const int n = a.order();
  const R a0 = a.coeff(0);
  if (!(a0 > R(0))) throw domain_error("jet log of a nonpositive value");
  jet<R> l(n);
  l.coeff(0) = std::log(a0);
  for (int k = 1; k <= n; ++k) {
    R s = R(k) * a.coeff(k);
    for (int j = 1; j < k; ++j) s -= R(j) * l.coeff(j) * a.coeff(k - j);
    l.coeff(k) = s / (R(k) * a0);
  }
  return l;
}

template <typename R>
jet<R> pow(const jet<R>& a, int m) {
  const int n = a.order();
  if (m < 0) return R(1) / pow(a, -m);
  jet<R> r(n, R(1)), b = a;
  while (m) {
    if (m & 1) r *= b;
    m >>= 1;
    if (m) b *= b;
  }
  return r;
}

template <typename R>
jet<R> pow(const jet<R>& a, R r) {
  const int n = a.order();
  const R a0 = a.coeff(0);
  if (r == std::round(r) && std::abs(r) < R(1 << 20) && (a0 == R(0) || r >= R(0)))
    return pow(a, int(std::lround(r)));
  if (a0 == R(0)) {
    if (n == 0) return jet<R>(0, r > 0 ? R(0) : R(INFINITY));
    throw order_error("derivatives of a non-integer power are undefined at 0");
  }
  if (a0 < R(0)) throw domain_error("non-integer power of a negative jet");
  jet<R> p(n);
  p.coeff(0) = std::pow(a0, r);
  for (int k = 1; k <= n; ++k) {
    R s = R(0);
    for (int j = 1; j <= k; ++j) s += (r * R(j) - R(k - j)) * a.coeff(j) * p.coeff(k - j);
    p.coeff(k) = s / (R(k) * a0);
  }
  return p;
}

template <typename R>
jet<R> sqrt(const jet<R>& a) {
  return pow(a, R(0.5));
}

}  // namespace mathieu
