#pragma once

// The weight k_Z, its circle averages and the uniform density quotients.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/scheme.hpp"

namespace bergman {

namespace detail {

/// Neumaier compensated sum; keeps multiset sums exact to a few ulps.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

/// k_Z(zeta) = (|zeta|^2 / 2) sum (1 - |z_k|^2)^2 / |1 - conj(z_k) zeta|^2.
inline double k_weight(const PointSequence& z, cplx zeta) {
  detail::CompensatedSum sum;
  for (const auto& a : z) {
    const double m = 1.0 - a.norm();
    sum.add(m * m / std::norm(1.0 - std::conj(a.value()) * zeta));
  }
  return 0.5 * std::norm(zeta) * sum.value();
}

/// Average of k_Z over the circle |zeta| = r, in closed form.
inline double k_hat(const PointSequence& z, double r) {
  const double r2 = r * r;
  detail::CompensatedSum sum;
  for (const auto& a : z) {
    const double m = 1.0 - a.norm();
    sum.add(m * m / (1.0 - a.norm() * r2));
  }
  return 0.5 * r2 * sum.value();
}

/// log(1 / (1 - r^2)).
inline double log_area_scale(double r) { return -std::log1p(-r * r); }

/// Numerator of the density quotient: (1/2) sum over |z_k| < r of (1 - |z_k|^2).
inline double density_numerator(const PointSequence& z, double r) {
  detail::CompensatedSum sum;
  for (const auto& a : z) {
    if (a.abs() < r) sum.add(1.0 - a.norm());
  }
  return 0.5 * sum.value();
}

inline double density_quotient(const PointSequence& z, double r) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::InvalidArgument, "radius must lie in (0,1)");
  return density_numerator(z, r) / log_area_scale(r);
}

inline PointSequence moebius_image(const PointSequence& z, DiskPoint a) {
  PointSequence out;
  out.reserve(z.size());
  for (const auto& p : z) out.push_back(moebius(a, p));
  return out;
}

struct DensityRow {
  double radius;
  DiskPoint center;
  double d_value;  // D(phi_a(Z), r)
  double s_value;  // k_hat(phi_a(Z), r) / log(1 / (1 - r^2))
};

struct DensityReport {
  std::vector<double> radii;
  std::vector<DiskPoint> mobius_centers;
  std::vector<DensityRow> rows;  // radius-major
  double d_plus_estimate = 0.0;
  double s_plus_estimate = 0.0;
};

inline std::vector<double> default_density_radii() { return {0.9, 0.95, 0.99}; }

/// Sequence points plus the origin, without repeats.
inline std::vector<DiskPoint> default_density_centers(const PointSequence& z) {
  std::vector<DiskPoint> out{DiskPoint(0.0)};
  for (const auto& p : z) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

/// Tabulates D and the k_hat quotient over a (radius, Moebius center) grid.
/// The estimates are the maxima at the largest radius; no limit is taken.
inline DensityReport estimate_upper_densities(const PointSequence& z,
                                              const std::vector<double>& radii,
                                              const std::vector<DiskPoint>& centers) {
  if (radii.empty() || centers.empty()) {
    throw Error(ErrorKind::EmptyGrid, "density grid needs at least one radius and one center");
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0 && radii[i] < 1.0) || (i > 0 && radii[i] <= radii[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "radii must be increasing inside (0,1)");
    }
  }
  DensityReport rep;
  rep.radii = radii;
  rep.mobius_centers = centers;
  std::vector<PointSequence> images;
  images.reserve(centers.size());
  for (const auto& a : centers) images.push_back(moebius_image(z, a));
  for (const double r : radii) {
    const double scale = log_area_scale(r);
    for (std::size_t c = 0; c < centers.size(); ++c) {
      rep.rows.push_back({r, centers[c], density_numerator(images[c], r) / scale,
                          k_hat(images[c], r) / scale});
    }
  }
  const double top = radii.back();
  for (const auto& row : rep.rows) {
    if (row.radius != top) continue;
    rep.d_plus_estimate = std::max(rep.d_plus_estimate, row.d_value);
    rep.s_plus_estimate = std::max(rep.s_plus_estimate, row.s_value);
  }
  return rep;
}

/// Samples of a function on the disk.
using DiskFunction = std::function<cplx(cplx)>;

struct LocalMeanGrid {
  int radial = 64;
  int angular = 64;
};

/// q = infinity is represented by this value.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Averaged q-mean of |f| over D(z, r):
/// (|D|^-1 int_D |f|^q dA)^(1/q), by midpoint quadrature on the Euclidean image.
/// For q = infinity the maximum over the quadrature nodes is returned.
inline double local_mean(const DiskFunction& f, DiskPoint z, double q, double r,
                         LocalMeanGrid grid = {}) {
  if (!(q >= 1.0)) throw Error(ErrorKind::InvalidArgument, "local_mean needs q >= 1");
  const EuclideanDisk e = pseudo_to_euclidean(PseudoDisk(z, r));
  const auto rule = midpoint_disk_rule(e.center, e.radius, grid.radial, grid.angular);
  if (rule.size() < 16) throw Error(ErrorKind::GridTooCoarse, "fewer than 16 nodes in the disk");
  if (std::isinf(q)) {
    double m = 0.0;
    for (const auto& node : rule) m = std::max(m, std::abs(f(node.z)));
    return m;
  }
  double acc = 0.0;
  for (const auto& node : rule) acc += node.weight * std::pow(std::abs(f(node.z)), q);
  return std::pow(acc / e.area(), 1.0 / q);
}

}  // namespace bergman
