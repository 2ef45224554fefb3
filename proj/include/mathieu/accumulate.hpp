#pragma once

#include <cmath>
#include <limits>

namespace mathieu {

// Neumaier variant of Kahan summation; also tracks sum of |terms| so callers
// can bound the rounding error of the whole accumulation.
template <typename Real>
struct compensated_sum {
  Real sum = Real(0);
  Real comp = Real(0);
  Real abs_sum = Real(0);
  long long count = 0;

  void operator+=(Real v) {
    using std::abs;
    Real t = sum + v;
    if (abs(sum) >= abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
    abs_sum += abs(v);
    ++count;
  }

  Real value() const { return sum + comp; }

  // generous bound on accumulated rounding, assuming each term carries a few ulps
  Real rounding_bound(Real per_term_ulps = Real(4)) const {
    const Real eps = std::numeric_limits<Real>::epsilon();
    return (per_term_ulps + 2) * eps * abs_sum;
  }
};

}  // namespace mathieu
