#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/scheme.hpp"

namespace bergman::testing {

/// Uniform in the Euclidean disk |z| < max_radius.
inline cplx random_point(std::mt19937_64& rng, double max_radius = 0.95) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(max_radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

inline PointSequence random_sequence(std::mt19937_64& rng, std::size_t n, double max_radius = 0.95) {
  PointSequence z;
  for (std::size_t i = 0; i < n; ++i) z.emplace_back(random_point(rng, max_radius));
  return z;
}

inline cplx random_value(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

/// Rejection-samples n points with pairwise psi >= min_psi.
inline PointSequence separated_sequence(std::mt19937_64& rng, std::size_t n, double min_psi,
                                        double max_radius = 0.8) {
  PointSequence z;
  while (z.size() < n) {
    const cplx c = random_point(rng, max_radius);
    bool ok = true;
    for (const auto& p : z) ok = ok && psi(p.value(), c) >= min_psi;
    if (ok) z.emplace_back(c);
  }
  return z;
}

}  // namespace bergman::testing
