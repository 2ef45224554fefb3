// Profile sweep: f(t) = (C/S_mu(t,u))^{1/mu} - t^2 for a few mu, followed by the
// sharp constants m, M read off the profile. Output is CSV on standard output.

#include <cstdio>

#include "mathieu/sharp.hpp"

using namespace mathieu;

int main() {
  const double u = 0;
  const double mus[] = {0.5, 1, 2, 4};
  std::printf("t");
  for (double mu : mus) std::printf(",f_mu%g", mu);
  std::printf("\n");
  for (double t = 0; t <= 12.0001; t += 0.25) {
    std::printf("%g", t);
    for (double mu : mus) std::printf(",%.12g", f_profile(s_mu_framework(mu, u), t));
    std::printf("\n");
  }
  std::printf("\nmu,m,M,t_at_M\n");
  for (double mu : mus) {
    auto c = compute_mM(s_mu_framework(mu, u));
    std::printf("%g,%.12g,%.12g,%.6g\n", mu, c.m, c.M, c.t_at_M);
  }
  return 0;
}
