// Two nearby points with values 0 and 1: the minimal A^2 interpolant grows
// like 1/psi as the points merge, while a cluster scheme keeps the jet norm
// bounded.

#include <cstdio>

#include "bergman/interpolation.hpp"
#include "bergman/scheme.hpp"
#include "bergman/sequence_norms.hpp"

int main() {
  using namespace bergman;
  std::printf("%8s %14s %14s %14s\n", "psi", "global_norm", "norm*psi", "pair_norm");
  for (const double t : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
    const PointSequence z{DiskPoint(0.0), DiskPoint(t)};
    const InterpolationScheme s = build_minimal_scheme(z, 0.01);
    const JetTargets targets = targets_from_values(s, {0.0, 1.0});
    const SolveReport rep = solve_p2(s, targets);
    const double pair = example3_norm({{z[0], z[1], 0.0, 1.0}}, 2.0);
    std::printf("%8.4f %14.6f %14.6f %14.6f\n", t, rep.norm_value, rep.norm_value * t, pair);
  }
  return 0;
}
