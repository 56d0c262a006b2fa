#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bergman/error.hpp"

namespace bergman {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [lo, hi] (Newton iteration on P_n).
inline QuadratureRule gauss_legendre(int n, double lo = -1.0, double hi = 1.0) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "gauss_legendre needs n >= 1");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo_i = static_cast<std::size_t>(i);
    const auto hi_i = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo_i] = mid - half * x;
    rule.nodes[hi_i] = mid + half * x;
    rule.weights[lo_i] = half * w;
    rule.weights[hi_i] = half * w;
  }
  return rule;
}

/// Node of a tensor polar rule: position and area weight.
struct PolarNode {
  std::complex<double> z;
  double weight;
};

/// Tensor polar grid on the whole unit disk. Radial nodes are Gauss nodes in
/// the angle variable r = sin(phi), which clusters them toward |z| = 1.
inline std::vector<PolarNode> disk_polar_rule(int radial, int angular) {
  const QuadratureRule g = gauss_legendre(radial, 0.0, std::numbers::pi / 2);
  std::vector<PolarNode> out;
  out.reserve(static_cast<std::size_t>(radial * angular));
  const double dt = 2.0 * std::numbers::pi / angular;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double r = std::sin(g.nodes[i]);
    const double w = g.weights[i] * std::cos(g.nodes[i]) * r * dt;
    for (int j = 0; j < angular; ++j) {
      const double t = (j + 0.5) * dt;
      out.push_back({std::polar(r, t), w});
    }
  }
  return out;
}

/// Midpoint polar rule on a Euclidean disk; weights sum to its area exactly.
inline std::vector<PolarNode> midpoint_disk_rule(std::complex<double> center, double radius,
                                                 int radial, int angular) {
  std::vector<PolarNode> out;
  out.reserve(static_cast<std::size_t>(radial * angular));
  const double dr = radius / radial;
  const double dt = 2.0 * std::numbers::pi / angular;
  for (int i = 0; i < radial; ++i) {
    const double r = (i + 0.5) * dr;
    for (int j = 0; j < angular; ++j) {
      out.push_back({center + std::polar(r, (j + 0.5) * dt), r * dr * dt});
    }
  }
  return out;
}

/// Gauss radial x trapezoid angular rule on a Euclidean disk; exact for
/// |polynomial|^2 of degree < radial in z.
inline std::vector<PolarNode> gauss_disk_rule(std::complex<double> center, double radius,
                                              int radial, int angular) {
  const QuadratureRule g = gauss_legendre(radial, 0.0, radius);
  std::vector<PolarNode> out;
  out.reserve(static_cast<std::size_t>(radial * angular));
  const double dt = 2.0 * std::numbers::pi / angular;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (int j = 0; j < angular; ++j) {
      out.push_back({center + std::polar(g.nodes[i], (j + 0.5) * dt),
                     g.weights[i] * g.nodes[i] * dt});
    }
  }
  return out;
}

}  // namespace bergman
