#pragma once

// Interpolation schemes: clusters of a point multiset, their domains and the
// admissibility constants (diameter, inner radius, separation, cluster bound).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/geometry.hpp"

namespace bergman {

/// Finite multiset of disk points; repeated entries encode multiplicity.
using PointSequence = std::vector<DiskPoint>;

struct Cluster {
  std::vector<std::size_t> members;  // indices into the parent sequence
};

/// Union of pseudohyperbolic balls of a common radius.
struct BallUnion {
  std::vector<DiskPoint> centers;
  double radius = 0.0;
};

/// Boundary samples per ball used for diameter and inner-radius measurement.
inline constexpr int kBoundarySamplesPerBall = 64;

/// Relative slack when comparing measured constants to declared ones.
inline constexpr double kConstantTolerance = 1e-9;

/// Largest admissible domain diameter.
inline constexpr double kMaxDiameter = 1.0 - 1e-9;

class Domain {
 public:
  Domain(PseudoDisk disk) : shape_(disk) {}     // NOLINT(google-explicit-constructor)
  Domain(BallUnion balls) : shape_(std::move(balls)) {  // NOLINT(google-explicit-constructor)
    const auto& u = std::get<BallUnion>(shape_);
    if (u.centers.empty()) throw Error(ErrorKind::InvalidArgument, "empty ball union");
    if (!(u.radius > 0.0 && u.radius < 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "ball radius must lie in (0,1)");
    }
  }

  bool is_disk() const { return std::holds_alternative<PseudoDisk>(shape_); }
  const PseudoDisk& disk() const { return std::get<PseudoDisk>(shape_); }
  const BallUnion& balls() const { return std::get<BallUnion>(shape_); }

  /// The domain as a list of pseudohyperbolic disks.
  std::vector<PseudoDisk> pieces() const {
    if (is_disk()) return {disk()};
    std::vector<PseudoDisk> out;
    for (const auto& c : balls().centers) out.emplace_back(c, balls().radius);
    return out;
  }

  bool contains(cplx z) const {
    for (const auto& d : pieces()) {
      if (psi(d.center().value(), z) < d.radius()) return true;
    }
    return false;
  }

  /// Boundary samples of every piece that are not interior to another piece.
  std::vector<cplx> boundary_points(int per_ball = kBoundarySamplesPerBall) const {
    const auto ps = pieces();
    std::vector<cplx> out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (const cplx s : boundary_samples(ps[i], per_ball)) {
        bool interior = false;
        for (std::size_t j = 0; j < ps.size() && !interior; ++j) {
          if (j != i && psi(ps[j].center().value(), s) < ps[j].radius()) interior = true;
        }
        if (!interior) out.push_back(s);
      }
    }
    return out;
  }

  /// Pseudohyperbolic diameter measured over boundary samples.
  double diameter() const {
    const auto pts = boundary_points();
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, psi(pts[i], pts[j]));
    }
    return best;
  }

  /// psi-distance from an interior point to the complement; negative when
  /// the point lies outside.
  double inner_distance(cplx z) const {
    if (!contains(z)) return -1.0;
    if (is_disk()) return hyp_diff(disk().radius(), psi(disk().center().value(), z));
    double best = 1.0;
    for (const cplx s : boundary_points()) best = std::min(best, psi(z, s));
    return best;
  }

 private:
  std::variant<PseudoDisk, BallUnion> shape_;
};

struct InterpolationScheme {
  PointSequence sequence;
  std::vector<Cluster> clusters;
  std::vector<Domain> domains;  // parallel to clusters
  double diameter = 0.0;        // R
  double inner_radius = 0.0;    // epsilon
  double separation = 0.0;      // delta
  std::size_t cluster_bound = 0;  // B
};

struct AdmissibilityReport {
  bool partition_ok = false;
  bool p1_ok = false;
  bool p2_ok = false;
  bool p3_ok = false;
  bool p4_ok = false;
  double diameter = 0.0;
  double inner_radius = 0.0;
  double separation = 0.0;
  std::size_t cluster_bound = 0;
  std::size_t bounded_density = 0;  // M(R)

  bool admissible() const { return partition_ok && p1_ok && p2_ok && p3_ok && p4_ok; }
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

/// Groups indices by union-find root; clusters ordered by smallest member.
inline std::vector<Cluster> collect_components(UnionFind& uf, std::size_t n) {
  std::vector<Cluster> out;
  std::vector<std::size_t> slot(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = uf.find(i);
    if (slot[r] == std::numeric_limits<std::size_t>::max()) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].members.push_back(i);
  }
  return out;
}

inline std::vector<DiskPoint> distinct_values(const PointSequence& z, const Cluster& c) {
  std::vector<DiskPoint> out;
  for (std::size_t i : c.members) {
    if (std::find(out.begin(), out.end(), z[i]) == out.end()) out.push_back(z[i]);
  }
  return out;
}

inline double min_intercluster_distance(const PointSequence& z,
                                        const std::vector<Cluster>& clusters) {
  std::vector<std::size_t> owner(z.size(), 0);
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    for (std::size_t i : clusters[k].members) owner[i] = k;
  }
  double best = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      if (owner[i] != owner[j]) best = std::min(best, psi(z[i], z[j]));
    }
  }
  return best;
}

inline std::size_t max_cluster_size(const std::vector<Cluster>& clusters) {
  std::size_t b = 0;
  for (const auto& c : clusters) b = std::max(b, c.members.size());
  return b;
}

/// Fixed psi-pitch of the local candidate grid used by bounded_density.
inline constexpr double kDensityGridPitch = 0.025;

}  // namespace detail

/// Largest number of entries of z (with multiplicity) in a single ball
/// D(c, radius). The supremum over all centers is approximated from below by
/// the sequence points, pairwise geodesic midpoints and a local polar grid of
/// fixed psi-pitch around every point, truncated at `radius`. The candidate
/// set grows with `radius`, so the result is nondecreasing in it.
inline std::size_t bounded_density(const PointSequence& z, double radius) {
  if (!(radius > 0.0 && radius < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "bounded_density radius must lie in (0,1)");
  }
  const std::size_t n = z.size();
  if (n == 0) return 0;
  const double reach = hyp_sum(radius, radius);
  std::vector<std::vector<std::size_t>> near(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (psi(z[i], z[j]) < reach) near[i].push_back(j);
    }
  }
  std::size_t best = 0;
  const double r2 = radius * radius;
  auto count_at = [&](cplx c, std::size_t anchor) {
    std::size_t k = 0;
    for (std::size_t j : near[anchor]) {
      // psi(c, z_j) < radius without the square root and division
      const cplx w = z[j].value();
      if (std::norm(c - w) < r2 * std::norm(1.0 - std::conj(w) * c)) ++k;
    }
    best = std::max(best, k);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = z[i].value();
    count_at(a, i);
    for (std::size_t j : near[i]) {
      if (j > i) count_at(geodesic_midpoint(a, z[j].value()), i);
    }
    for (int ring = 1; ring * detail::kDensityGridPitch < radius; ++ring) {
      const double t = ring * detail::kDensityGridPitch;
      const int count = std::max(8, static_cast<int>(std::ceil(2.0 * std::numbers::pi * t /
                                                              detail::kDensityGridPitch)));
      for (int j = 0; j < count; ++j) {
        count_at(moebius(a, std::polar(t, 2.0 * std::numbers::pi * j / count)), i);
      }
    }
  }
  return best;
}

/// Clusters = connected components of the union of epsilon-balls around the
/// points; domains = those components.
inline InterpolationScheme build_minimal_scheme(const PointSequence& z, double epsilon) {
  if (z.empty()) throw Error(ErrorKind::InvalidArgument, "empty point sequence");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0,1)");
  }
  const std::size_t n = z.size();
  const double merge = hyp_sum(epsilon, epsilon);
  detail::UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (psi(z[i], z[j]) < merge) uf.unite(i, j);
    }
  }
  InterpolationScheme s;
  s.sequence = z;
  s.clusters = detail::collect_components(uf, n);
  for (const auto& c : s.clusters) {
    Domain d(BallUnion{detail::distinct_values(z, c), epsilon});
    const double diam = d.diameter();
    if (diam >= kMaxDiameter) {
      throw Error(ErrorKind::DiameterOverflow,
                  "component diameter " + std::to_string(diam) + " too large for this epsilon");
    }
    s.diameter = std::max(s.diameter, diam);
    s.domains.push_back(std::move(d));
  }
  s.inner_radius = epsilon;
  s.separation = detail::min_intercluster_distance(z, s.clusters);
  s.cluster_bound = detail::max_cluster_size(s.clusters);
  return s;
}

/// Step epsilon_{j+1} = hyp_sum(epsilon_j, diam(epsilon)) taken `steps` times.
inline double radius_recursion(double epsilon, std::size_t steps) {
  const double d = ball_diameter(epsilon);
  double e = epsilon;
  for (std::size_t j = 0; j < steps; ++j) e = hyp_sum(e, d);
  return e;
}

/// Largest epsilon (bisection) whose radius recursion stays inside r0 after
/// B steps, B = bounded_density(z, r0).
inline double auto_epsilon(const PointSequence& z, double r0) {
  if (!(r0 > 0.0 && r0 < 1.0)) throw Error(ErrorKind::InvalidArgument, "r0 must lie in (0,1)");
  if (z.empty()) throw Error(ErrorKind::InvalidArgument, "empty point sequence");
  const std::size_t b = bounded_density(z, r0);
  auto ok = [&](double e) { return radius_recursion(e, b) <= r0; };
  double lo = 1e-6, hi = r0;
  if (!ok(lo)) {
    throw Error(ErrorKind::NoValidEpsilon, "no epsilon >= 1e-6 satisfies the radius recursion");
  }
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

/// Same clusters as the minimal scheme, each domain replaced by one
/// pseudohyperbolic disk around the cluster's minimax member.
inline InterpolationScheme build_maximal_scheme(const PointSequence& z, double epsilon) {
  InterpolationScheme s = build_minimal_scheme(z, epsilon);
  s.domains.clear();
  s.diameter = 0.0;
  for (const auto& c : s.clusters) {
    std::size_t center = c.members.front();
    double minimax = std::numeric_limits<double>::infinity();
    for (std::size_t i : c.members) {
      double worst = 0.0;
      for (std::size_t j : c.members) worst = std::max(worst, psi(z[i], z[j]));
      if (worst < minimax) {
        minimax = worst;
        center = i;
      }
    }
    const double radius = std::min(minimax + epsilon, kMaxDiameter);
    Domain d(PseudoDisk(z[center], radius));
    const double diam = d.diameter();
    if (diam >= kMaxDiameter) {
      throw Error(ErrorKind::DiameterOverflow, "maximal domain diameter too large");
    }
    s.diameter = std::max(s.diameter, diam);
    s.domains.push_back(std::move(d));
  }
  return s;
}

/// Measures the four admissibility constants from the data and compares them
/// with the scheme's declared ones. Never throws on failure.
inline AdmissibilityReport check_admissibility(const InterpolationScheme& s) {
  AdmissibilityReport rep;
  const auto& z = s.sequence;

  std::vector<int> seen(z.size(), 0);
  bool partition = s.clusters.size() == s.domains.size();
  for (const auto& c : s.clusters) {
    if (c.members.empty()) partition = false;
    for (std::size_t i : c.members) {
      if (i >= z.size()) {
        partition = false;
        continue;
      }
      ++seen[i];
    }
  }
  for (int v : seen) partition = partition && v == 1;
  rep.partition_ok = partition;
  if (!partition) return rep;

  for (const auto& d : s.domains) rep.diameter = std::max(rep.diameter, d.diameter());
  rep.p1_ok = rep.diameter <= s.diameter * (1.0 + kConstantTolerance) && s.diameter < 1.0;

  rep.inner_radius = 1.0;
  for (std::size_t k = 0; k < s.clusters.size(); ++k) {
    for (std::size_t i : s.clusters[k].members) {
      rep.inner_radius = std::min(rep.inner_radius, s.domains[k].inner_distance(z[i].value()));
    }
  }
  rep.p2_ok = rep.inner_radius > 0.0 &&
              rep.inner_radius >= s.inner_radius * (1.0 - kConstantTolerance);

  rep.separation = detail::min_intercluster_distance(z, s.clusters);
  rep.p3_ok = rep.separation > 0.0 && rep.separation >= s.separation * (1.0 - kConstantTolerance);

  rep.cluster_bound = detail::max_cluster_size(s.clusters);
  rep.p4_ok = rep.cluster_bound <= s.cluster_bound;

  if (rep.diameter > 0.0 && rep.diameter < 1.0) rep.bounded_density = bounded_density(z, rep.diameter);
  return rep;
}

/// Largest number of domains covering a single sample point.
inline std::size_t overlap_bound(const InterpolationScheme& s, int radial = 6, int angular = 12) {
  std::vector<cplx> samples;
  for (const auto& d : s.domains) {
    for (const auto& piece : d.pieces()) {
      const EuclideanDisk e = pseudo_to_euclidean(piece);
      samples.push_back(piece.center().value());
      for (int i = 0; i < radial; ++i) {
        const double r = e.radius * (i + 0.5) / radial;
        for (int j = 0; j < angular; ++j) {
          samples.push_back(e.center + std::polar(r, 2.0 * std::numbers::pi * j / angular));
        }
      }
    }
  }
  std::size_t best = 0;
  for (const cplx p : samples) {
    std::size_t k = 0;
    for (const auto& d : s.domains) k += d.contains(p) ? 1 : 0;
    best = std::max(best, k);
  }
  return best;
}

}  // namespace bergman
