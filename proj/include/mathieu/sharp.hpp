#pragma once

// Sharp constants of double inequalities
//   C/(t^beta1 + M)^{delta1/beta1} < S(t) < C/(t^beta1 + m)^{delta1/beta1}
// as the extrema of the profile f(t) = (C/S(t))^{beta1/delta1} - t^beta1, the
// convex-kernel profile psi(u,y) = F^{-1}(S(u,y)) - y and the theta-function
// limits m_inf(u), M_inf(u).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "series.hpp"

namespace mathieu {

// S(t) with C t^{-delta1} - S(t) ~ A t^{-delta1-beta1} as t -> inf
struct sharp_framework {
  std::function<eval_result<double>(double)> series;
  // optional S(t) t^delta1 / C - 1 without cancellation, for t > 0
  std::function<eval_result<double>(double)> defect;
  // optional fast non-rigorous S(t) for profile values; series is used otherwise
  std::function<double(double)> estimate;
  double C = 1, delta1 = 1, A = 1, beta1 = 1;
  std::string name;

  double f_inf() const { return beta1 * A / (delta1 * C); }

  // positivity of S and S(t) < C t^-delta1 on the given sample
  void check(const std::vector<double>& ts) const {
    if (!(C > 0 && delta1 > 0 && A > 0 && beta1 > 0)) throw precondition_error("framework constants must be positive");
    for (double t : ts) {
      auto s = series(t);
      if (!(s.lower() > 0)) throw precondition_error("S must be positive");
      if (t > 0 && !(s.upper() < C * std::pow(t, -delta1))) throw precondition_error("S(t) must stay below C t^-delta1");
    }
  }
};

namespace detail {

// X = mu t^{2mu} S_mu(t,u) - 1 from the asymptotic stream, or nullopt when the
// cached terms do not reach relative size 1e-19
inline std::optional<long double> s_mu_defect_asym(const mathieu_params& p, long double t) {
  const auto s = asym_S(p, asym_max_terms(p, series_kind::plain));
  const long double mu = p.mu, x = 1 / (t * t);
  long double sum = 0, xp = x, prev = INFINITY;
  for (const auto& tm : s.stream) {
    const long double v = mu * tm.coeff * xp;
    const long double a = std::fabs(v);
    if (a > prev) return std::nullopt;
    sum += v;
    if (a <= 1e-19L * std::fabs(sum)) return sum;
    prev = a;
    xp *= x;
  }
  return std::nullopt;
}

}  // namespace detail

// mu t^{2mu} S_mu(t,u) - 1, the relative defect against the leading term
inline eval_result<double> s_mu_defect(double mu, double u, double t) {
  const auto p = mathieu_params::make(1, 2, mu, u);
  if (!(t > 0)) throw domain_error("the defect needs t > 0");
  eval_result<double> r;
  r.rigorous = false;
  if (t >= 15)
    if (auto x = detail::s_mu_defect_asym(p, t)) {
      r.value = double(*x);
      r.err_lo = r.err_hi = 1e-18 * std::abs(r.value);
      r.method = eval_method::asymptotic;
      return r;
    }
  const long double tl = t;
  auto s = estimate_S<long double>(p, tl);
  const long double scale = (long double)mu * std::pow(tl, 2 * (long double)mu);
  r.value = double(scale * s.value - 1);
  r.err_lo = r.err_hi = double(scale * s.err_hi + 4 * std::numeric_limits<long double>::epsilon());
  r.method = eval_method::direct;
  r.terms_used = s.terms_used;
  return r;
}

// S_mu(t,u) = sum 2(k+u)/((k+u)^2+t^2)^{mu+1}: C = 1/mu, delta1 = 2mu, beta1 = 2,
// A = u^2+u+1/6
inline sharp_framework s_mu_framework(double mu, double u) {
  const auto p = mathieu_params::make(1, 2, mu, u);
  p.validate(series_kind::plain);
  if (u < 0) throw domain_error("the sharp-constant framework needs u >= 0");
  sharp_framework fw;
  fw.C = 1 / mu;
  fw.delta1 = 2 * mu;
  fw.beta1 = 2;
  fw.A = u * u + u + 1.0 / 6;
  fw.name = "S_mu";
  fw.series = [p, mu](double t) {
    const double tol = 1e-14 / (mu * std::pow(1 + t * t, mu));
    return eval_auto<double>(p, t, tol, series_kind::plain);
  };
  fw.defect = [mu, u](double t) { return s_mu_defect(mu, u, t); };
  fw.estimate = [p](double t) { return double(estimate_S<long double>(p, t).value); };
  return fw;
}

// f(t) = (C/S(t))^{beta1/delta1} - t^beta1, written as
// t^beta1 expm1(-(beta1/delta1) log1p(X)), X = S t^delta1 / C - 1
inline double f_profile(const sharp_framework& fw, double t) {
  if (!(t >= 0)) throw domain_error("t must be nonnegative");
  const long double r = (long double)fw.beta1 / fw.delta1;
  auto value = [&](double t) {
    const double s = fw.estimate ? fw.estimate(t) : fw.series(t).value;
    if (!(s > 0)) throw precondition_error("S must be positive");
    return (long double)s;
  };
  if (t == 0) return double(std::pow((long double)fw.C / value(0.0), r));
  const long double tb = std::pow((long double)t, (long double)fw.beta1);
  if (fw.defect) {
    const long double x = fw.defect(t).value;
    // near x = -1 the defect has lost 1 + x; the direct form has no cancellation there
    if (x > -0.5L) return double(tb * std::expm1(-r * std::log1p(x)));
  }
  const long double s = value(t);
  const long double x = s * std::pow((long double)t, (long double)fw.delta1) / fw.C - 1;
  if (x > -0.5L) return double(tb * std::expm1(-r * std::log1p(x)));
  return double(std::pow((long double)fw.C / s, r) - tb);
}

struct search_config {
  int grid = 2048;          // points of the compactified grid s = t/(1+t)
  int candidates = 4;       // local extrema refined per side
  double s_tol = 1e-10;     // golden-section bracket width in s
  long max_evals = 200000;  // budget of f evaluations
};

struct sharp_constants {
  double m = 0, M = 0, f_inf = 0;
  double t_at_m = 0, t_at_M = 0;  // +inf when the extremum is the limit t -> inf
  bool certified = false;
  // refinement-stability report: |refined - best grid value|
  double refine_delta_m = 0, refine_delta_M = 0;
  long evaluations = 0;
  double tolerance() const { return std::max({refine_delta_m, refine_delta_M, 1e-10}); }
};

namespace detail {

inline double s_to_t(double s) { return s / (1 - s); }

// minimize phi on [a,b] by golden section; returns {argmin, min}
template <typename Phi>
std::pair<double, double> golden_min(const Phi& phi, double a, double b, double tol) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = phi(c), fd = phi(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = phi(d);
    }
  }
  return fc <= fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

// global minimum of phi over s in [0,1) from a grid plus golden refinement of the
// best local minima; phi_inf is the limit at s -> 1
struct compact_min {
  double value, s;  // s = 1 marks the limit
  double grid_value;
};

template <typename Phi>
compact_min minimize_compact(const Phi& phi, double phi_inf, const search_config& cfg) {
  const int n = cfg.grid;
  if (n < 3) throw domain_error("the search grid needs at least 3 points");
  std::vector<double> f(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) f[std::size_t(i)] = phi(double(i) / n);
  std::vector<int> cand;
  for (int i = 0; i < n; ++i) {
    const double l = i > 0 ? f[std::size_t(i - 1)] : INFINITY;
    const double r = i + 1 < n ? f[std::size_t(i + 1)] : phi_inf;
    if (f[std::size_t(i)] <= l && f[std::size_t(i)] <= r) cand.push_back(i);
  }
  std::sort(cand.begin(), cand.end(), [&](int a, int b) { return f[std::size_t(a)] < f[std::size_t(b)]; });
  if (int(cand.size()) > cfg.candidates) cand.resize(std::size_t(cfg.candidates));
  const auto gbest = std::min_element(f.begin(), f.end());
  compact_min best{*gbest, double(gbest - f.begin()) / n, std::min(*gbest, phi_inf)};
  for (int i : cand) {
    const double a = std::max(0, i - 1) / double(n), b = std::min(n - 1, i + 1) / double(n);
    auto [s, v] = golden_min(phi, a, b, cfg.s_tol);
    if (v < best.value) best = {v, s, best.grid_value};
    // the grid point itself may beat an interior golden probe at the boundary s = 0
  }
  if (phi_inf <= best.value) best = {phi_inf, 1.0, best.grid_value};
  return best;
}

}  // namespace detail

// m = inf f, M = sup f over t in [0, inf) with f(inf) from the closed form
inline sharp_constants compute_mM(const sharp_framework& fw, const search_config& cfg = {}) {
  sharp_constants out;
  out.f_inf = fw.f_inf();
  long evals = 0;
  auto f_of_s = [&](double s) {
    if (++evals > cfg.max_evals) throw search_error("profile evaluations exceeded the search budget");
    return f_profile(fw, detail::s_to_t(s));
  };
  auto lo = detail::minimize_compact(f_of_s, out.f_inf, cfg);
  auto hi = detail::minimize_compact([&](double s) { return -f_of_s(s); }, -out.f_inf, cfg);
  out.m = lo.value;
  out.M = -hi.value;
  out.t_at_m = lo.s >= 1 ? INFINITY : detail::s_to_t(lo.s);
  out.t_at_M = hi.s >= 1 ? INFINITY : detail::s_to_t(hi.s);
  out.refine_delta_m = std::abs(lo.value - lo.grid_value);
  out.refine_delta_M = std::abs(hi.value - hi.grid_value);
  out.evaluations = evals;
  out.certified = false;
  return out;
}

// ---------------------------------------------------------------------------
// convex kernels: S(u,y) = sum_{k>=1} 2(k+u) g((k+u)^2+y), psi = F^{-1}(S) - y

struct convex_kernel {
  std::function<double(double)> g;      // positive, decreasing, convex
  std::function<double(double)> F;      // int_x^inf g
  std::function<double(double)> F_inv;  // optional closed form
  double domain_left = 0;               // g defined on (domain_left, inf)
  std::string name;

  // g(x) = x^{-mu-1}, F(x) = x^{-mu}/mu
  static convex_kernel power(double mu) {
    if (!(mu > 0)) throw domain_error("mu must be positive");
    convex_kernel k;
    k.g = [mu](double x) { return std::pow(x, -mu - 1); };
    k.F = [mu](double x) { return std::pow(x, -mu) / mu; };
    k.F_inv = [mu](double s) { return std::pow(mu * s, -1 / mu); };
    k.name = "power";
    return k;
  }
  // g(x) = e^{-lambda x}, F(x) = e^{-lambda x}/lambda
  static convex_kernel exponential(double lambda) {
    if (!(lambda > 0)) throw domain_error("lambda must be positive");
    convex_kernel k;
    k.g = [lambda](double x) { return std::exp(-lambda * x); };
    k.F = [lambda](double x) { return std::exp(-lambda * x) / lambda; };
    k.F_inv = [lambda](double s) { return -std::log(lambda * s) / lambda; };
    k.domain_left = -INFINITY;
    k.name = "exponential";
    return k;
  }
};

// S(u,y) by direct summation; the tail beyond N is the same series at offset
// u + N and is bracketed by the Hermite-Hadamard bounds
//   F((1+v)^2+y) + (1/2+v) g((1+v)^2+y) <= S(v,y) <= F(v^2+v+y)
inline eval_result<double> kernel_series(const convex_kernel& k, double u, double y, double tol = 1e-13) {
  if (!(u >= -1.5) || !std::isfinite(y)) throw domain_error("kernel series needs u >= -3/2 and finite y");
  if (!((1 + u) * (1 + u) + y > k.domain_left)) throw domain_error("kernel series needs (1+u)^2 + y inside the domain of g");
  auto term = [&](double v) { return 2 * v * k.g(v * v + y); };
  auto bracket = [&](double v) {
    const double x1 = (1 + v) * (1 + v) + y;
    const double lo = k.F(x1) + (0.5 + v) * k.g(x1);
    const double hi = k.F(v * v + v + y);
    return std::make_pair(lo, hi);
  };
  const long long cap = detail::max_terms();
  long long N = 16 + (long long)std::ceil(std::sqrt(std::max(0.0, std::abs(y))));
  // the bracket needs the shifted arguments inside the domain and convexity there
  while (!(double(N) * double(N) + u > k.domain_left + 1 && double(N) + u > 0)) N *= 2;
  for (;;) {
    auto [lo, hi] = bracket(u + double(N));
    if (hi - lo <= tol) break;
    if (N > cap) throw tolerance_error("kernel series would exceed the term cap (MATHIEU_MAX_TERMS)");
    N *= 2;
  }
  compensated_sum<double> head;
  for (long long j = N; j >= 1; --j) head += term(double(j) + u);
  auto [lo, hi] = bracket(u + double(N));
  eval_result<double> r;
  r.value = head.value() + (lo + hi) / 2;
  r.err_lo = r.err_hi = (hi - lo) / 2 + head.rounding_bound() + 4 * std::numeric_limits<double>::epsilon() * std::abs(r.value);
  r.method = eval_method::direct;
  r.terms_used = N;
  return r;
}

// F^{-1}(s) by bracketing, bisection and a Newton polish (F' = -g)
inline double kernel_F_inverse(const convex_kernel& k, double s) {
  if (!(s > 0)) throw domain_error("F^{-1} needs a positive argument");
  if (k.F_inv) return k.F_inv(s);
  double a = std::isfinite(k.domain_left) ? k.domain_left : -1.0, b = std::max(1.0, a + 1);
  if (std::isfinite(k.domain_left)) {
    // F(domain_left+) may be finite: step toward the edge
    double w = b - a;
    double aa = b;
    while (k.F(aa) < s) {
      w /= 2;
      aa = a + w;
      if (w < 1e-300) throw domain_error("F^{-1}: value above the range of F");
    }
    a = aa;
  } else {
    while (k.F(a) < s) a = 2 * a - 1;
  }
  while (k.F(b) > s) b = 2 * b + 1;
  for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++i) {
    const double m = 0.5 * (a + b);
    (k.F(m) > s ? a : b) = m;
  }
  double x = 0.5 * (a + b);
  for (int i = 0; i < 3; ++i) {
    const double gx = k.g(x);
    if (!(gx > 0)) break;
    const double nx = x + (k.F(x) - s) / gx;
    if (!(nx >= a && nx <= b)) break;
    x = nx;
  }
  return x;
}

inline double psi_uy(const convex_kernel& k, double u, double y) {
  if (!(u >= 0) || !(y >= 0)) throw domain_error("psi needs u >= 0 and y >= 0");
  auto s = kernel_series(k, u, y);
  return kernel_F_inverse(k, s.value) - y;
}

// ---------------------------------------------------------------------------
// theta-function limits as mu -> inf

struct theta_constant {
  double value = 0;
  double x_at = 0;  // 0 marks the limit x -> 0+
  double refine_delta = 0;
  long evaluations = 0;
};

// m_inf(u) = inf_{x>0} -ln(phi_u(x))/x; the limits are u^2+u+1/6 at x -> 0+
// and (1+u)^2 at x -> inf
inline theta_constant m_infinity_search(double u, const search_config& cfg = {}) {
  if (!(u >= 0)) throw domain_error("u must be nonnegative");
  long evals = 0;
  const double at0 = u * u + u + 1.0 / 6, at_inf = (1 + u) * (1 + u);
  // reflect s so the x -> 0+ endpoint is the limit handled by minimize_compact
  auto q = [&](double r) {
    if (++evals > cfg.max_evals) throw search_error("m_inf evaluations exceeded the search budget");
    if (r == 0) return at_inf;
    const double x = (1 - r) / r;  // r = 1/(1+x)
    return -log_phi_u<double>(u, x) / x;
  };
  auto best = detail::minimize_compact(q, at0, cfg);
  theta_constant out;
  out.value = best.value;
  out.x_at = best.s >= 1 ? 0.0 : (best.s == 0 ? INFINITY : (1 - best.s) / best.s);
  out.refine_delta = std::abs(best.value - best.grid_value);
  out.evaluations = evals;
  return out;
}

inline double m_infinity(double u) { return m_infinity_search(u).value; }

inline double M_infinity(double u) {
  if (!(u >= 0)) throw domain_error("u must be nonnegative");
  return (1 + u) * (1 + u);
}

// ---------------------------------------------------------------------------
// impossibility of the double inequality with an exponent beta != beta1

enum class bound_side { upper, lower };

struct impossibility_witness {
  bool found = false;
  double t = 0;
  double defect = 0;     // S t^delta1 / C - 1
  double candidate = 0;  // (1 + c t^-beta)^{-delta1/beta} - 1
  int scanned = 0;
};

// upper side: S(t) <= C (t^beta + c)^{-delta1/beta}; lower side: S(t) >= C (t^beta + c)^{-delta1/beta}.
// Scans t = 2^k, k = 0..max_doublings, for a point where the candidate fails
// beyond the error bracket of S.
inline impossibility_witness impossibility_demo(const sharp_framework& fw, double beta, bound_side side, double c,
                                                int max_doublings = 60) {
  if (!(beta > 0)) throw domain_error("beta must be positive");
  if (beta == fw.beta1) throw precondition_error("beta equals beta1: the inequality is attainable");
  if (!(c > 0)) throw domain_error("the shift constant must be positive");
  impossibility_witness w;
  for (int k = 0; k <= max_doublings; ++k) {
    const double t = std::ldexp(1.0, k);
    eval_result<double> x;
    if (fw.defect) {
      x = fw.defect(t);
    } else {
      auto s = fw.series(t);
      const double sc = std::pow(t, fw.delta1) / fw.C;
      x.value = s.value * sc - 1;
      x.err_lo = s.err_lo * sc;
      x.err_hi = s.err_hi * sc;
    }
    const double cand = std::expm1(-(fw.delta1 / beta) * std::log1p(c * std::pow(t, -beta)));
    ++w.scanned;
    const bool fails = side == bound_side::upper ? x.value - x.err_lo > cand : x.value + x.err_hi < cand;
    if (fails) {
      w.found = true;
      w.t = t;
      w.defect = x.value;
      w.candidate = cand;
      return w;
    }
  }
  return w;
}

}  // namespace mathieu
