// Runs the r = 4, x0 = 0.1, 150-iteration experiment in both rounding modes
// and prints the Lyapunov estimates and the point where the orbits separate.

#include <cstdio>

#include "logmap/logmap.hpp"

int main() {
  using namespace logmap;

  MapParams trunc{encode("4"), encode("0.1"), RoundMode::Trunc, 150};
  MapParams ceil = trunc;
  ceil.mode = RoundMode::CeilPosInf;

  const Orbit a = run_orbit(trunc);
  const Orbit b = run_orbit(ceil);

  std::printf("x0 = %s (%s)\n", decode(trunc.x0).c_str(), to_hex(trunc.x0).c_str());
  for (const Orbit* o : {&a, &b}) {
    const LyapunovEstimate est = lyapunov(*o);
    std::printf("%-5s lambda = %.4f  (ln 2 = %.4f, N = %zu)\n",
                round_name(o->params.mode).data(), est.lambda, *est.reference, est.n_used);
  }

  const DivergenceProfile prof = divergence(a, b);
  const auto visible = prof.first_visible_divergence(0.1);
  std::printf("first raw-bit difference at n = %zu\n", prof.first_bit_divergence.value_or(0));
  std::printf("first |diff| > 0.1 at n = %zu\n", visible.value_or(0));
  return 0;
}
