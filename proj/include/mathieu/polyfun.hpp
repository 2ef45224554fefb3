#pragma once

// Bernoulli and Euler polynomials with exact rational coefficients, the
// periodic splines b_n, e_n, certified sup-norm bounds and Beta helpers.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

#include <boost/math/special_functions/beta.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

#ifndef MATHIEU_POLY_MAX_ORDER
#define MATHIEU_POLY_MAX_ORDER 64
#endif

namespace mathieu {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline constexpr int poly_max_order = MATHIEU_POLY_MAX_ORDER;

enum class poly_family { bernoulli, euler };

struct poly_coeffs {
  int degree = 0;
  std::vector<rational> coeffs;  // constant term first
};

struct spline_kind {
  poly_family kind = poly_family::bernoulli;
  int order = 0;
};

namespace detail {

// polynomial as (1/den) * sum num[j] x^j with integer num, for fast exact evaluation
struct int_poly {
  std::vector<bigint> num;
  bigint den;
};

inline int_poly to_int_poly(const poly_coeffs& p) {
  int_poly r;
  r.den = 1;
  for (const auto& c : p.coeffs) r.den = boost::multiprecision::lcm(r.den, bigint(denominator(c)));
  for (const auto& c : p.coeffs) r.num.push_back(bigint(numerator(c)) * (r.den / bigint(denominator(c))));
  return r;
}

inline bigint binomial(int n, int k) {
  bigint r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct poly_table {
  // B_n for n <= poly_max_order + 1 so E_{poly_max_order} is available
  static constexpr int nb = poly_max_order + 2;
  static constexpr int ne = poly_max_order + 1;

  std::vector<rational> bnum;
  std::vector<poly_coeffs> bern, eul;
  std::vector<int_poly> bern_i, eul_i;
  std::vector<std::vector<long double>> bern_ld, eul_ld;

  poly_table() {
    // Akiyama-Tanigawa; it yields B_1 = +1/2, flipped below
    std::vector<rational> a(nb);
    bnum.resize(nb);
    for (int m = 0; m < nb; ++m) {
      a[m] = rational(1, m + 1);
      for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
      bnum[m] = a[0];
    }
    bnum[1] = rational(-1, 2);

    bern.resize(nb);
    for (int n = 0; n < nb; ++n) {
      auto& p = bern[n];
      p.degree = n;
      p.coeffs.resize(n + 1);
      for (int j = 0; j <= n; ++j) p.coeffs[j] = rational(binomial(n, j)) * bnum[n - j];
    }
    // E_n(x) = 2/(n+1) (B_{n+1}(x) - 2^{n+1} B_{n+1}(x/2)), coefficientwise
    eul.resize(ne);
    for (int n = 0; n < ne; ++n) {
      auto& p = eul[n];
      p.degree = n;
      p.coeffs.resize(n + 1);
      const auto& b = bern[n + 1].coeffs;
      for (int j = 0; j <= n; ++j) {
        rational scale = 1 - rational(bigint(1) << (n + 1 - j));
        p.coeffs[j] = rational(2, n + 1) * b[j] * scale;
      }
      // degree n+1 coefficient cancels: 1 - 2^0 = 0
    }
    for (auto& p : bern) {
      bern_i.push_back(to_int_poly(p));
      std::vector<long double> v;
      for (auto& c : p.coeffs) v.push_back(c.convert_to<long double>());
      bern_ld.push_back(std::move(v));
    }
    for (auto& p : eul) {
      eul_i.push_back(to_int_poly(p));
      std::vector<long double> v;
      for (auto& c : p.coeffs) v.push_back(c.convert_to<long double>());
      eul_ld.push_back(std::move(v));
    }
  }
};

inline const poly_table& table() {
  static const poly_table t;  // thread-safe lazy init
  return t;
}

inline void check_order(int n, int limit) {
  if (n < 0 || n > limit) throw order_error("polynomial order " + std::to_string(n) + " outside cached range [0, " + std::to_string(limit) + "]");
}

// exact dyadic rational of a finite double
inline rational to_rational(double x) {
  if (!std::isfinite(x)) throw domain_error("non-finite argument");
  int e = 0;
  double m = std::frexp(x, &e);
  long long mi = (long long)std::ldexp(m, 53);
  e -= 53;
  rational r = rational(bigint(mi));
  if (e >= 0)
    r *= rational(bigint(1) << e);
  else
    r /= rational(bigint(1) << (-e));
  return r;
}

inline rational eval_exact(const int_poly& p, const rational& x) {
  // x = M / D; N = sum num_j M^j D^{n-j}, result N / (den D^n)
  bigint M = numerator(x), D = denominator(x);
  const int n = int(p.num.size()) - 1;
  bigint acc = p.num[n];
  bigint dpow = 1;
  for (int j = n - 1; j >= 0; --j) {
    dpow *= D;
    acc = acc * M + p.num[j] * dpow;
  }
  return rational(acc, p.den * dpow);
}

template <typename Real>
Real horner(const std::vector<long double>& c, Real x) {
  Real acc = Real(c.back());
  for (int j = int(c.size()) - 2; j >= 0; --j) acc = acc * x + Real(c[j]);
  return acc;
}

// bound on the rounding error of horner() at x
inline long double horner_err(const std::vector<long double>& c, long double x) {
  long double s = 0, ax = std::abs(x), p = 1;
  for (auto v : c) {
    s += std::abs(v) * p;
    p *= ax;
  }
  return (2 * c.size() + 4) * std::numeric_limits<long double>::epsilon() * s;
}

// Taylor coefficients of the polynomial about c (repeated synthetic division)
inline std::vector<long double> taylor_shift(std::vector<long double> a, long double c) {
  const int n = int(a.size()) - 1;
  for (int k = 0; k < n; ++k)
    for (int j = n - 1; j >= k; --j) a[j] += c * a[j + 1];
  return a;
}

}  // namespace detail

inline const poly_coeffs& bernoulli_coeffs(int n) {
  detail::check_order(n, poly_max_order);
  return detail::table().bern[n];
}

inline const poly_coeffs& euler_coeffs(int n) {
  detail::check_order(n, poly_max_order);
  return detail::table().eul[n];
}

inline const rational& bernoulli_number(int n) {
  detail::check_order(n, poly_max_order);
  return detail::table().bnum[n];
}

inline rational bernoulli_poly_exact(int n, const rational& x) {
  detail::check_order(n, poly_max_order);
  return detail::eval_exact(detail::table().bern_i[n], x);
}

inline rational euler_poly_exact(int n, const rational& x) {
  detail::check_order(n, poly_max_order);
  return detail::eval_exact(detail::table().eul_i[n], x);
}

// B_n(x) from exact coefficients, rounded once
template <typename Real = double>
Real bernoulli_poly(int n, double x) {
  return bernoulli_poly_exact(n, detail::to_rational(x)).template convert_to<Real>();
}

template <typename Real = double>
Real euler_poly(int n, double x) {
  return euler_poly_exact(n, detail::to_rational(x)).template convert_to<Real>();
}

// floating Horner evaluation for integrands and searches (not rounded once)
template <typename Real>
Real bernoulli_poly_fast(int n, Real x) {
  detail::check_order(n, poly_max_order + 1);
  return detail::horner(detail::table().bern_ld[n], x);
}

template <typename Real>
Real euler_poly_fast(int n, Real x) {
  detail::check_order(n, poly_max_order);
  return detail::horner(detail::table().eul_ld[n], x);
}

// b_n(x) = B_n({x}); e_n(x) = 2/(n+1) (b_{n+1}(x) - 2^{n+1} b_{n+1}(x/2))
inline double spline_eval(spline_kind s, double x) {
  const int n = s.order;
  if (s.kind == poly_family::bernoulli) {
    detail::check_order(n, poly_max_order);
    return bernoulli_poly_exact(n, detail::to_rational(x - std::floor(x))).convert_to<double>();
  }
  detail::check_order(n, poly_max_order - 1);
  auto b = [&](double y) {
    return detail::eval_exact(detail::table().bern_i[n + 1], detail::to_rational(y - std::floor(y)));
  };
  rational v = rational(2, n + 1) * (b(x) - rational(bigint(1) << (n + 1)) * b(x / 2));
  return v.convert_to<double>();
}

// fast spline evaluation; e_n uses antiperiodicity e_n(x+1) = -e_n(x)
template <typename Real>
Real spline_eval_fast(spline_kind s, Real x) {
  if (s.kind == poly_family::bernoulli) return bernoulli_poly_fast<Real>(s.order, x - std::floor(x));
  Real y = x - Real(2) * std::floor(x / Real(2));
  if (y < Real(1)) return euler_poly_fast<Real>(s.order, y);
  return -euler_poly_fast<Real>(s.order, y - Real(1));
}

// certified upper bound of sup |P| on [a, b], P = B_n or E_n
inline double poly_sup(int n, poly_family fam, double a, double b) {
  detail::check_order(n, poly_max_order);
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) throw domain_error("poly_sup needs a bounded interval");
  if (n == 0) return 1.0;
  const auto& t = detail::table();
  const auto& p = fam == poly_family::bernoulli ? t.bern_ld[n] : t.eul_ld[n];
  // P' = n Q with Q the same family one order lower
  const auto& q = fam == poly_family::bernoulli ? t.bern_ld[n - 1] : t.eul_ld[n - 1];
  const auto exact_abs = [&](double x) {
    rational v = fam == poly_family::bernoulli ? bernoulli_poly_exact(n, detail::to_rational(x))
                                                : euler_poly_exact(n, detail::to_rational(x));
    return std::abs(v.convert_to<long double>());
  };
  long double best = std::max(exact_abs(a), exact_abs(b));
  struct box {
    long double l, r;
  };
  std::vector<box> stack;
  const int init = 32;
  for (int i = 0; i < init; ++i) {
    long double l = a + (long double)(b - a) * i / init;
    long double r = i + 1 == init ? (long double)b : a + (long double)(b - a) * (i + 1) / init;
    stack.push_back({l, r});
  }
  const long double min_width = std::max<long double>(1e-11L, 1e-11L * (b - a));
  while (!stack.empty()) {
    box bx = stack.back();
    stack.pop_back();
    long double c = 0.5L * (bx.l + bx.r), h = 0.5L * (bx.r - bx.l);
    auto qs = detail::taylor_shift(q, c);
    long double rad = 0, hp = 1;
    for (std::size_t k = 1; k < qs.size(); ++k) {
      hp *= h;
      rad += std::abs(qs[k]) * hp;
    }
    long double slack = detail::horner_err(q, c) * 4 + rad * 1e-15L;
    if (std::abs(qs[0]) > rad + slack) {
      // monotone on the box: extremes at its ends
      for (long double x : {bx.l, bx.r}) {
        long double v = std::abs(detail::horner(p, x)) + detail::horner_err(p, x);
        best = std::max(best, v);
      }
      continue;
    }
    if (h < min_width) {
      auto ps = detail::taylor_shift(p, c);
      long double bound = std::abs(ps[0]), hq = 1;
      for (std::size_t k = 1; k < ps.size(); ++k) {
        hq *= h;
        bound += std::abs(ps[k]) * hq;
      }
      bound += detail::horner_err(p, c) * 4;
      best = std::max(best, bound);
      continue;
    }
    stack.push_back({bx.l, c});
    stack.push_back({c, bx.r});
  }
  // outward rounding to double
  double r = double(best * (1 + 1e-14L));
  return std::nextafter(r, std::numeric_limits<double>::infinity());
}

// sup |b_order| over [0,1] or sup |e_order| over [0,2], cached
inline double spline_sup(spline_kind s) {
  detail::check_order(s.order, poly_max_order);
  static std::mutex mu;
  static std::array<double, 2 * (poly_max_order + 1)> cache{};
  const std::size_t idx = (s.kind == poly_family::euler ? poly_max_order + 1 : 0) + s.order;
  {
    std::lock_guard<std::mutex> lk(mu);
    if (cache[idx] > 0) return cache[idx];
  }
  // e_n on [1,2) equals -E_n(x-1), so both splines reduce to [0,1]
  double v = poly_sup(s.order, s.kind, 0.0, 1.0);
  std::lock_guard<std::mutex> lk(mu);
  cache[idx] = v;
  return v;
}

template <typename Real = double>
Real beta_fn(Real a, Real b) {
  if (!(a > 0) || !(b > 0)) throw domain_error("beta_fn needs positive arguments");
  return boost::math::beta(a, b);
}

}  // namespace mathieu
