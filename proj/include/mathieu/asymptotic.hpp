#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mathieu {

// sum of c_k z^{e_k}: an optional leading term plus a coefficient stream
struct asymptotic_series {
  struct term {
    long double exponent = 0;
    long double coeff = 0;
  };

  std::string variable = "t";
  std::optional<term> leading;
  std::vector<term> stream;

  template <typename Real>
  static Real term_value(const term& tm, Real z) {
    using std::pow;
    if (tm.coeff == 0) return Real(0);
    return Real(tm.coeff) * pow(z, Real(tm.exponent));
  }

  // leading term plus the first n stream terms
  template <typename Real>
  Real evaluate(Real z, int n) const {
    Real s = leading ? term_value<Real>(*leading, z) : Real(0);
    // smallest terms first
    for (int k = std::min<int>(n, int(stream.size())) - 1; k >= 0; --k) s += term_value<Real>(stream[std::size_t(k)], z);
    return s;
  }

  // the first omitted stream term after truncation at n (0 when the stream is exhausted)
  template <typename Real>
  Real next_term(Real z, int n) const {
    if (n < 0 || n >= int(stream.size())) return Real(0);
    return term_value<Real>(stream[std::size_t(n)], z);
  }

  struct diagnostics {
    int n_used = 0;
    long double last_term = 0;
    long double next_term = 0;  // heuristic error proxy, not a certified bound
    int smallest_index = -1;     // index of the smallest nonzero stream term at z
  };

  template <typename Real>
  diagnostics truncation(Real z, int n) const {
    diagnostics d;
    d.n_used = std::min<int>(n, int(stream.size()));
    if (d.n_used > 0) d.last_term = (long double)term_value<Real>(stream[std::size_t(d.n_used - 1)], z);
    d.next_term = (long double)next_term<Real>(z, n);
    long double best = INFINITY;
    for (std::size_t k = 0; k < stream.size(); ++k) {
      long double v = std::abs((long double)term_value<Real>(stream[k], z));
      if (v != 0 && v < best) {
        best = v;
        d.smallest_index = int(k);
      }
    }
    return d;
  }

  // sum over terms after the leading one divided by the leading term
  template <typename Real>
  Real relative_tail(Real z, int n) const {
    if (!leading) return Real(NAN);
    using std::pow;
    Real s = 0;
    for (int k = std::min<int>(n, int(stream.size())) - 1; k >= 0; --k) {
      const auto& tm = stream[std::size_t(k)];
      if (tm.coeff != 0) s += Real(tm.coeff / leading->coeff) * pow(z, Real(tm.exponent - leading->exponent));
    }
    return s;
  }
};

}  // namespace mathieu
