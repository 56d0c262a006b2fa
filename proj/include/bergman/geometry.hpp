#pragma once

// Pseudohyperbolic geometry of the unit disk.

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "bergman/error.hpp"

namespace bergman {

using cplx = std::complex<double>;

/// Points closer than this to the unit circle are rejected.
inline constexpr double kBoundaryGuard = 1e-12;

/// A complex number strictly inside the unit disk.
class DiskPoint {
 public:
  constexpr DiskPoint() = default;

  DiskPoint(cplx value) : value_(value) {  // NOLINT(google-explicit-constructor)
    if (!(std::abs(value) < 1.0 - kBoundaryGuard)) {
      std::ostringstream os;
      os << "point " << value << " is not inside the unit disk";
      throw Error(ErrorKind::PointOutsideDisk, os.str());
    }
  }
  explicit DiskPoint(double re, double im = 0.0) : DiskPoint(cplx(re, im)) {}

  constexpr cplx value() const noexcept { return value_; }
  double real() const noexcept { return value_.real(); }
  double imag() const noexcept { return value_.imag(); }
  double abs() const noexcept { return std::abs(value_); }
  double norm() const noexcept { return std::norm(value_); }

  friend bool operator==(const DiskPoint& a, const DiskPoint& b) noexcept {
    return a.value_ == b.value_;
  }

 private:
  cplx value_{0.0, 0.0};
};

struct EuclideanDisk {
  cplx center;
  double radius = 0.0;

  bool contains(cplx z) const { return std::abs(z - center) < radius; }
  double area() const { return std::numbers::pi * radius * radius; }
};

/// The pseudohyperbolic disk { z : psi(center, z) < radius }.
class PseudoDisk {
 public:
  PseudoDisk(DiskPoint center, double radius) : center_(center), radius_(radius) {
    if (!(radius > 0.0 && radius < 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "pseudohyperbolic radius must lie in (0,1)");
    }
  }

  DiskPoint center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }

 private:
  DiskPoint center_;
  double radius_;
};

/// Pseudohyperbolic distance |(z - w) / (1 - conj(w) z)|.
inline double psi(cplx z, cplx w) {
  if (z == w) return 0.0;
  return std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
}
inline double psi(DiskPoint z, DiskPoint w) { return psi(z.value(), w.value()); }

/// The involution (a - z) / (1 - conj(a) z), exchanging a and 0.
inline cplx moebius(cplx a, cplx z) { return (a - z) / (1.0 - std::conj(a) * z); }
inline DiskPoint moebius(DiskPoint a, DiskPoint z) { return DiskPoint(moebius(a.value(), z.value())); }

/// Derivative of z -> moebius(a, z).
inline cplx moebius_derivative(cplx a, cplx z) {
  const cplx d = 1.0 - std::conj(a) * z;
  return (std::norm(a) - 1.0) / (d * d);
}

/// Distance to the boundary, 1 - |z|.
inline double rho(DiskPoint z) { return 1.0 - z.abs(); }

/// Tight upper bound for psi(x, z) given psi(x, y) = s and psi(y, z) = t.
inline double hyp_sum(double s, double t) { return (s + t) / (1.0 + s * t); }

/// Inverse of hyp_sum in its first argument: the x with hyp_sum(x, t) = s.
inline double hyp_diff(double s, double t) { return (s - t) / (1.0 - s * t); }

/// Density of the invariant measure against area, (1 - |z|^2)^-2.
inline double invariant_area_weight(cplx z) {
  const double w = 1.0 - std::norm(z);
  return 1.0 / (w * w);
}
inline double invariant_area_weight(DiskPoint z) { return invariant_area_weight(z.value()); }

/// Euclidean disk equal to the pseudohyperbolic disk as a point set.
inline EuclideanDisk pseudo_to_euclidean(const PseudoDisk& d) {
  const cplx c = d.center().value();
  const double r2 = d.radius() * d.radius();
  const double c2 = std::norm(c);
  const double denom = 1.0 - r2 * c2;
  return {(1.0 - r2) * c / denom, d.radius() * (1.0 - c2) / denom};
}

/// Pseudohyperbolic diameter of any ball of radius r.
inline double ball_diameter(double r) { return hyp_sum(r, r); }

/// Point on the geodesic from a to b at equal distance from both.
inline cplx geodesic_midpoint(cplx a, cplx b) {
  const cplx v = moebius(a, b);
  const double s = std::abs(v);
  if (s == 0.0) return a;
  // hyp_sum(t, t) = s
  const double t = (1.0 - std::sqrt(1.0 - s * s)) / s;
  return moebius(a, t * v / s);
}

/// n points on the boundary circle of a pseudohyperbolic disk.
inline std::vector<cplx> boundary_samples(const PseudoDisk& d, int n) {
  const EuclideanDisk e = pseudo_to_euclidean(d);
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi * j / n;
    out.push_back(e.center + e.radius * cplx(std::cos(t), std::sin(t)));
  }
  return out;
}

}  // namespace bergman
