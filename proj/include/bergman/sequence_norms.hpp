#pragma once

// Explicit sequence-space norms for single-point, multiple-point and pair
// clusters, the crowding-weighted norm for distinct sequences, cluster
// interpolants built from Moebius factors, and weighted area norms.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "bergman/analytic.hpp"
#include "bergman/error.hpp"
#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/scheme.hpp"

namespace bergman {

namespace detail {

inline void require_p(double p) {
  if (!(p > 0.0)) throw Error(ErrorKind::InvalidArgument, "p must be positive");
}

}  // namespace detail

/// (sum |w_k|^p (1 - |z_k|^2)^2)^(1/p).
inline double example1_norm(const PointSequence& z, const std::vector<cplx>& values, double p) {
  detail::require_p(p);
  if (z.size() != values.size()) throw Error(ErrorKind::InvalidArgument, "one value per point");
  double acc = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double m = 1.0 - z[k].norm();
    acc += std::pow(std::abs(values[k]), p) * m * m;
  }
  return std::pow(acc, 1.0 / p);
}

/// Derivative data at one point: jets[j] = w^(j).
struct PointJets {
  DiskPoint point;
  std::vector<cplx> jets;
};

/// (sum_k sum_j |w_k^(j)|^p (1 - |z_k|^2)^(pj + 2))^(1/p).
inline double example2_norm(const std::vector<PointJets>& data, double p) {
  detail::require_p(p);
  double acc = 0.0;
  for (const auto& d : data) {
    const double m = 1.0 - d.point.norm();
    for (std::size_t j = 0; j < d.jets.size(); ++j) {
      acc += std::pow(std::abs(d.jets[j]), p) * std::pow(m, p * static_cast<double>(j) + 2.0);
    }
  }
  return std::pow(acc, 1.0 / p);
}

/// u + (v - u) M(z) / M(b) with M(z) = (z - a)/(1 - conj(a) z); takes u at a
/// and v at b.
inline AnalyticFunctionRep example3_representative(DiskPoint a, DiskPoint b, cplx u, cplx v) {
  if (psi(a, b) < 1e-10) throw Error(ErrorKind::DegeneratePair, "pair points coincide");
  // (z - a)/(1 - conj(a) z) = -M_a(z), and the sign cancels in the ratio.
  const cplx mb = moebius(a.value(), b.value());
  return MoebiusAffine{a.value(), u, (v - u) / mb};
}

struct PairData {
  DiskPoint a;
  DiskPoint b;
  cplx u;
  cplx v;
};

/// Largest pair separation accepted by example3_norm.
inline constexpr double kPairSeparationLimit = 0.99;

/// (sum (|u_k|^p + |(v_k - u_k)/psi(a_k, b_k)|^p)(1 - |a_k|^2)^2)^(1/p).
inline double example3_norm(const std::vector<PairData>& pairs, double p) {
  detail::require_p(p);
  double acc = 0.0;
  for (const auto& pr : pairs) {
    const double e = psi(pr.a, pr.b);
    if (!(e > 0.0)) throw Error(ErrorKind::DegeneratePair, "pair points coincide");
    if (e >= kPairSeparationLimit) throw Error(ErrorKind::PairTooFar, "pair separation >= 0.99");
    const double m = 1.0 - pr.a.norm();
    acc += (std::pow(std::abs(pr.u), p) + std::pow(std::abs(pr.v - pr.u) / e, p)) * m * m;
  }
  return std::pow(acc, 1.0 / p);
}

/// Local crowding of a point among `points`: n counts the other points in
/// D(gamma, 1/2), delta is the distance to the nearest other point (1 when
/// there is none).
struct Crowding {
  std::size_t n_exclusive = 0;
  std::size_t n_inclusive = 0;
  double delta = 1.0;
};

inline Crowding crowding(const std::vector<DiskPoint>& points, std::size_t gamma) {
  Crowding c;
  bool any = false;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j == gamma) continue;
    const double d = psi(points[gamma], points[j]);
    if (d < 0.5) ++c.n_exclusive;
    c.delta = any ? std::min(c.delta, d) : d;
    any = true;
  }
  c.n_inclusive = c.n_exclusive + 1;
  return c;
}

inline void require_distinct(const std::vector<DiskPoint>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) throw Error(ErrorKind::DuplicatePoint, "points must be distinct");
    }
  }
}

/// sum |c_g|^p (1 - |g|^2)^(alpha + 2) / delta_g^(p n_g), n_g excluding g.
inline double o_interp_weight(const PointSequence& z, const std::vector<cplx>& coeffs, double p,
                              double alpha) {
  detail::require_p(p);
  if (!(alpha > -1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must exceed -1");
  if (z.size() != coeffs.size()) throw Error(ErrorKind::InvalidArgument, "one coefficient per point");
  require_distinct(z);
  double acc = 0.0;
  for (std::size_t g = 0; g < z.size(); ++g) {
    const Crowding c = crowding(z, g);
    acc += std::pow(std::abs(coeffs[g]), p) * std::pow(1.0 - z[g].norm(), alpha + 2.0) /
           std::pow(c.delta, p * static_cast<double>(c.n_exclusive));
  }
  return acc;
}

/// Largest cluster accepted by lagrange_cluster_interpolant.
inline constexpr std::size_t kMaxLagrangeCluster = 16;

inline AnalyticFunctionRep lagrange_cluster_interpolant(const std::vector<DiskPoint>& points,
                                                        const std::vector<cplx>& values) {
  if (points.size() != values.size() || points.empty()) {
    throw Error(ErrorKind::InvalidArgument, "one value per cluster point");
  }
  if (points.size() > kMaxLagrangeCluster) {
    throw Error(ErrorKind::InvalidArgument, "cluster larger than 16 points");
  }
  require_distinct(points);
  LagrangeBlaschke f;
  for (const auto& p : points) f.nodes.push_back(p.value());
  f.values = values;
  return f;
}

struct BlaschkeBound {
  double value = 0.0;  // |prod_{b != g} M_b(z) / M_b(g)|
  double bound = 0.0;  // 2^B / delta^n, n excluding g
  double bound_inclusive = 0.0;  // same with n counting g itself
  Crowding crowding;
};

inline BlaschkeBound blaschke_bound_check(const std::vector<DiskPoint>& cluster, std::size_t gamma,
                                          cplx z) {
  if (gamma >= cluster.size()) throw Error(ErrorKind::InvalidArgument, "gamma index out of range");
  require_distinct(cluster);
  BlaschkeBound r;
  double prod = 1.0;
  const cplx g = cluster[gamma].value();
  for (std::size_t b = 0; b < cluster.size(); ++b) {
    if (b == gamma) continue;
    const cplx beta = cluster[b].value();
    prod *= std::abs(moebius(beta, z)) / std::abs(moebius(beta, g));
  }
  r.value = prod;
  r.crowding = crowding(cluster, gamma);
  const double big = std::pow(2.0, static_cast<double>(cluster.size()));
  r.bound = big / std::pow(r.crowding.delta, static_cast<double>(r.crowding.n_exclusive));
  r.bound_inclusive = big / std::pow(r.crowding.delta, static_cast<double>(r.crowding.n_inclusive));
  return r;
}

struct WeightedNormGrid {
  int radial = 128;
  int angular = 256;
  double tolerance = 1e-6;  // relative agreement with half radial and half angular resolution
};

/// (int_D |f|^p (1 - |z|^2)^alpha dA)^(1/p) on the whole unit disk.
inline double weighted_norms(const std::function<cplx(cplx)>& f, double p, double alpha,
                             WeightedNormGrid grid = {}) {
  detail::require_p(p);
  if (!(alpha > -1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must exceed -1");
  auto integrate = [&](int radial, int angular) {
    double acc = 0.0;
    for (const auto& node : disk_polar_rule(radial, angular)) {
      acc += node.weight * std::pow(std::abs(f(node.z)), p) * std::pow(1.0 - std::norm(node.z), alpha);
    }
    return acc;
  };
  const double full = integrate(grid.radial, grid.angular);
  const double limit = grid.tolerance * std::max(std::abs(full), 1e-300);
  if (!std::isfinite(full) || std::abs(full - integrate(grid.radial / 2, grid.angular)) > limit ||
      std::abs(full - integrate(grid.radial, grid.angular / 2)) > limit) {
    throw Error(ErrorKind::QuadratureDivergence, "weighted norm quadrature did not settle");
  }
  return std::pow(full, 1.0 / p);
}

inline double weighted_norms(const AnalyticFunctionRep& f, double p, double alpha, WeightedNormGrid grid = {}) {
  return weighted_norms([&f](cplx z) { return evaluate(f, z); }, p, alpha, grid);
}

/// <f, g> = int_D f conj(g) dA by the same polar rule.
inline cplx area_inner_product(const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& g,
                               int radial = 128, int angular = 256) {
  cplx acc = 0.0;
  for (const auto& node : disk_polar_rule(radial, angular)) acc += node.weight * f(node.z) * std::conj(g(node.z));
  return acc;
}

}  // namespace bergman
