#pragma once

// Numerical companion for the weighted dbar problem (1 - |z|^2) dbar u = f:
// polar grid functions, the invariant Laplacian, tau and its invariant
// smoothing, the explicit potential with a harmonic majorant, and Cauchy
// transform particular solutions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "bergman/density.hpp"
#include "bergman/error.hpp"
#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/scheme.hpp"

namespace bergman {

/// Polar nodes r_i = (i + 1/2) max_radius / radial, theta_j = 2 pi j / angular.
struct PolarGrid {
  int radial = 200;
  int angular = 200;
  double max_radius = 0.995;

  void validate() const {
    if (radial < 16 || angular < 16) throw Error(ErrorKind::GridTooCoarse, "polar grid needs at least 16x16 nodes");
    if (!(max_radius > 0.0 && max_radius <= 0.999)) {
      throw Error(ErrorKind::InvalidArgument, "polar grid radius must lie in (0, 0.999]");
    }
  }
  double dr() const { return max_radius / radial; }
  double dtheta() const { return 2.0 * std::numbers::pi / angular; }
  double r(int i) const { return (i + 0.5) * dr(); }
  double theta(int j) const { return j * dtheta(); }
  cplx node(int i, int j) const { return std::polar(r(i), theta(j)); }
  double cell_area(int i) const { return r(i) * dr() * dtheta(); }
  std::size_t size() const { return static_cast<std::size_t>(radial) * static_cast<std::size_t>(angular); }
};

/// Complex samples on a polar grid, ring-major.
class GridFunction {
 public:
  explicit GridFunction(PolarGrid grid) : grid_(grid) {
    grid_.validate();
    values_.assign(grid_.size(), cplx(0.0));
  }
  GridFunction(PolarGrid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    if (values_.size() != grid_.size()) throw Error(ErrorKind::InvalidArgument, "value count does not match grid");
  }

  template <class F>
  static GridFunction sample(PolarGrid grid, F&& f) {
    GridFunction g(grid);
    for (int i = 0; i < grid.radial; ++i) {
      for (int j = 0; j < grid.angular; ++j) g.at(i, j) = cplx(f(grid.node(i, j)));
    }
    return g;
  }

  const PolarGrid& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  cplx& at(int i, int j) { return values_[index(i, j)]; }
  cplx at(int i, int j) const { return values_[index(i, j)]; }

  /// Bilinear interpolation in (r, theta); periodic in theta, clamped in r.
  cplx interpolate(cplx z) const {
    const double rr = std::abs(z);
    double th = std::arg(z);
    if (th < 0.0) th += 2.0 * std::numbers::pi;
    const double fi = std::clamp(rr / grid_.dr() - 0.5, 0.0, grid_.radial - 1.0);
    const int i0 = std::min(static_cast<int>(fi), grid_.radial - 2);
    const double ti = fi - i0;
    const double fj = th / grid_.dtheta();
    const int j0 = static_cast<int>(std::floor(fj)) % grid_.angular;
    const int j1 = (j0 + 1) % grid_.angular;
    const double tj = fj - std::floor(fj);
    return (1 - ti) * ((1 - tj) * at(i0, j0) + tj * at(i0, j1)) +
           ti * ((1 - tj) * at(i0 + 1, j0) + tj * at(i0 + 1, j1));
  }

  GridFunction& operator+=(const GridFunction& o) {
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
  }
  GridFunction& operator*=(cplx s) {
    for (auto& v : values_) v *= s;
    return *this;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(grid_.angular) + static_cast<std::size_t>(j);
  }
  PolarGrid grid_;
  std::vector<cplx> values_;
};

using ComplexField = std::function<cplx(cplx)>;
using RealField = std::function<double(cplx)>;

/// (1 - |z|^2)^2 d dbar f by the five-point stencil of step h.
inline cplx invariant_laplacian(const ComplexField& f, cplx z, double h) {
  if (!(h > 0.0) || std::abs(z) + 2.0 * h >= 1.0) {
    throw Error(ErrorKind::StencilOutOfDomain, "stencil leaves the unit disk");
  }
  const cplx lap = f(z + h) + f(z - h) + f(z + cplx(0.0, h)) + f(z - cplx(0.0, h)) - 4.0 * f(z);
  const double w = 1.0 - std::norm(z);
  return w * w * lap / (4.0 * h * h);
}

inline double invariant_laplacian(const RealField& f, cplx z, double h) {
  return invariant_laplacian(ComplexField([&f](cplx w) { return cplx(f(w)); }), z, h).real();
}

/// Same operator at grid node (i, j), polar second differences.
inline cplx invariant_laplacian(const GridFunction& f, int i, int j) {
  const PolarGrid& g = f.grid();
  if (i < 1 || i > g.radial - 2) throw Error(ErrorKind::StencilOutOfDomain, "node on the grid boundary");
  const int jp = (j + 1) % g.angular;
  const int jm = (j + g.angular - 1) % g.angular;
  const double r = g.r(i), dr = g.dr(), dt = g.dtheta();
  const cplx frr = (f.at(i + 1, j) - 2.0 * f.at(i, j) + f.at(i - 1, j)) / (dr * dr);
  const cplx fr = (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * dr);
  const cplx ftt = (f.at(i, jp) - 2.0 * f.at(i, j) + f.at(i, jm)) / (dt * dt);
  const double w = 1.0 - r * r;
  return w * w * 0.25 * (frr + fr / r + ftt / (r * r));
}

/// dbar f at node (i, j) by centered differences in r and theta.
inline cplx dbar_at(const GridFunction& f, int i, int j) {
  const PolarGrid& g = f.grid();
  if (i < 1 || i > g.radial - 2) throw Error(ErrorKind::StencilOutOfDomain, "node on the grid boundary");
  const int jp = (j + 1) % g.angular;
  const int jm = (j + g.angular - 1) % g.angular;
  const cplx fr = (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * g.dr());
  const cplx ft = (f.at(i, jp) - f.at(i, jm)) / (2.0 * g.dtheta());
  return 0.5 * std::polar(1.0, g.theta(j)) * (fr + cplx(0.0, 1.0) * ft / g.r(i));
}

/// max over interior nodes of |(1 - |z|^2) dbar u - f|.
inline double dbar_residual(const GridFunction& u, const GridFunction& f) {
  const PolarGrid& g = u.grid();
  if (g.radial != f.grid().radial || g.angular != f.grid().angular || g.max_radius != f.grid().max_radius) {
    throw Error(ErrorKind::InvalidArgument, "u and f must share a grid");
  }
  double worst = 0.0;
  for (int i = 1; i < g.radial - 1; ++i) {
    const double w = 1.0 - g.r(i) * g.r(i);
    for (int j = 0; j < g.angular; ++j) worst = std::max(worst, std::abs(w * dbar_at(u, i, j) - f.at(i, j)));
  }
  return worst;
}

/// u(z) = -(1/pi) int g(w) / (w - z) dA(w) over |w| < max_radius.
///
/// Angular integrals are done exactly per Fourier mode: with
/// g = sum_k g_k(rho) e^{ik theta}, the transform has modes
///   u_{k-1}(r) = -2 r^{k-1} int_r^R g_k(rho) rho^{1-k} drho      (k >= 1)
///   u_{k-1}(r) =  2 r^{k-1} int_0^r g_k(rho) rho^{1-k} drho      (k <= 0)
/// and the radial integrals use piecewise-linear g_k with 4-point Gauss
/// panels, so the kernel singularity never meets a quadrature node.
inline GridFunction cauchy_transform(const GridFunction& g) {
  const PolarGrid& grid = g.grid();
  const int nr = grid.radial, nt = grid.angular;
  const int kmin = -nt / 2, kmax = kmin + nt - 1;
  const auto nmodes = static_cast<std::size_t>(nt);
  for (const auto& v : g.values()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorKind::QuadratureDivergence, "non-finite samples in the Cauchy transform input");
    }
  }

  // Fourier coefficients per ring: coeff[i][k - kmin].
  std::vector<std::vector<cplx>> coeff(static_cast<std::size_t>(nr), std::vector<cplx>(nmodes));
  std::vector<cplx> twiddle(nmodes);
  for (int j = 0; j < nt; ++j) twiddle[static_cast<std::size_t>(j)] = std::polar(1.0, -grid.theta(j));
  for (int i = 0; i < nr; ++i) {
    for (int k = kmin; k <= kmax; ++k) {
      cplx acc = 0.0;
      for (int j = 0; j < nt; ++j) {
        const auto idx = static_cast<std::size_t>(((static_cast<long>(k) * j) % nt + nt) % nt);
        acc += g.at(i, j) * twiddle[idx];
      }
      coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - kmin)] = acc / static_cast<double>(nt);
    }
  }

  // Radial panels between breakpoints 0, r_0, ..., r_{n-1}, R.
  struct QuadPoint {
    double rho, weight;
    int lo, hi;
    double t;
  };
  const QuadratureRule gl = gauss_legendre(4, 0.0, 1.0);
  std::vector<double> breaks{0.0};
  for (int i = 0; i < nr; ++i) breaks.push_back(grid.r(i));
  breaks.push_back(grid.max_radius);
  std::vector<std::vector<QuadPoint>> panels(breaks.size() - 1);
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s], b = breaks[s + 1];
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      QuadPoint p{a + (b - a) * gl.nodes[q], (b - a) * gl.weights[q], 0, 0, 0.0};
      if (s == 0) {
        p.lo = p.hi = 0;
      } else if (s == breaks.size() - 2) {
        p.lo = p.hi = nr - 1;
      } else {
        p.lo = static_cast<int>(s) - 1;
        p.hi = static_cast<int>(s);
        p.t = gl.nodes[q];
      }
      panels[s].push_back(p);
    }
  }
  auto gk = [&](const QuadPoint& p, std::size_t mode) {
    return (1.0 - p.t) * coeff[static_cast<std::size_t>(p.lo)][mode] +
           p.t * coeff[static_cast<std::size_t>(p.hi)][mode];
  };

  GridFunction out(grid);
  std::vector<cplx> umode(nmodes);  // u_{k-1}(r_i), indexed by k - kmin
  for (int i = 0; i < nr; ++i) {
    const double r = grid.r(i);
    std::fill(umode.begin(), umode.end(), cplx(0.0));
    // Outer panels (rho >= r): modes k >= 1 with weight (r/rho)^{k-1}.
    for (std::size_t s = static_cast<std::size_t>(i) + 1; s < panels.size(); ++s) {
      for (const auto& p : panels[s]) {
        const double ratio = r / p.rho;
        double pw = 1.0;
        for (int k = 1; k <= kmax; ++k) {
          const auto mode = static_cast<std::size_t>(k - kmin);
          umode[mode] += -2.0 * p.weight * pw * gk(p, mode);
          pw *= ratio;
          if (pw < 1e-300) break;
        }
      }
    }
    // Inner panels (rho <= r): modes k <= 0 with weight (rho/r)^{1-k}.
    for (std::size_t s = 0; s <= static_cast<std::size_t>(i); ++s) {
      for (const auto& p : panels[s]) {
        const double ratio = p.rho / r;
        double pw = ratio;
        for (int k = 0; k >= kmin; --k) {
          const auto mode = static_cast<std::size_t>(k - kmin);
          umode[mode] += 2.0 * p.weight * pw * gk(p, mode);
          pw *= ratio;
          if (pw < 1e-300) break;
        }
      }
    }
    for (int j = 0; j < nt; ++j) {
      cplx acc = 0.0;
      for (int k = kmin; k <= kmax; ++k) {
        const auto idx = static_cast<std::size_t>(((static_cast<long>(k - 1) * j) % nt + nt) % nt);
        acc += umode[static_cast<std::size_t>(k - kmin)] * std::conj(twiddle[idx]);
      }
      out.at(i, j) = acc;
    }
  }
  return out;
}

/// Parameters of tau(zeta) = log 1/(1 - |zeta|^2) - (p / beta) k_Z(zeta).
struct TauSpec {
  PointSequence z;
  double p = 1.0;
  double beta = 0.5;

  void validate() const {
    if (!(p > 0.0)) throw Error(ErrorKind::InvalidArgument, "tau needs p > 0");
    if (!(beta > 0.0 && beta < 1.0)) throw Error(ErrorKind::InvalidArgument, "tau needs beta in (0,1)");
  }
};

inline double tau_eval(const TauSpec& spec, cplx zeta) {
  spec.validate();
  return -std::log1p(-std::norm(zeta)) - spec.p / spec.beta * k_weight(spec.z, zeta);
}

struct SmoothingGrid {
  int radial = 48;
  int angular = 64;
};

/// Invariant average of tau over D(z, r_star) against the kernel
/// log(r_star^2 / psi(w, z)^2) dlambda(w), normalized to unit mass.
/// Computed in the coordinates xi = M_z(w) with t = |xi| = r_star x^2.
inline double invariant_smooth(const RealField& tau, cplx z, double r_star, SmoothingGrid grid = {}) {
  if (!(r_star > 0.0 && r_star < 1.0)) throw Error(ErrorKind::InvalidArgument, "r_star must lie in (0,1)");
  const QuadratureRule gl = gauss_legendre(grid.radial, 0.0, 1.0);
  const double dt = 2.0 * std::numbers::pi / grid.angular;
  double acc = 0.0;
  for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
    const double x = gl.nodes[q];
    const double t = r_star * x * x;
    const double s = 1.0 - t * t;
    const double radial_w = gl.weights[q] * (-8.0 * r_star * r_star * x * x * x * std::log(x)) / (s * s);
    double ring = 0.0;
    for (int j = 0; j < grid.angular; ++j) ring += tau(moebius(z, std::polar(t, (j + 0.5) * dt)));
    acc += radial_w * ring * dt;
  }
  const double value = acc / (std::numbers::pi * log_area_scale(r_star));
  if (!std::isfinite(value)) throw Error(ErrorKind::QuadratureDivergence, "smoothing integral is not finite");
  return value;
}

inline double tau_smooth(const TauSpec& spec, cplx z, double r_star = 0.5, SmoothingGrid grid = {}) {
  spec.validate();
  return invariant_smooth([&spec](cplx w) { return tau_eval(spec, w); }, z, r_star, grid);
}

struct PotentialGrid {
  int radial = 96;
  int angular = 128;
};

struct GreenPotential {
  double value = 0.0;          // u(z)
  double positive_part = 0.0;  // first two kernel terms
  double negative_part = 0.0;  // third kernel term
  double laplacian_sup = 0.0;  // max |Laplacian| over the sampled nodes
  bool third_term_nonpositive = true;
};

namespace detail {

/// (log t + (1 - t^2)/2) / (1 - t^2)^2, stable as t -> 1.
inline double potential_bracket_over_weight(double t) {
  const double s = 1.0 - t * t;
  if (s < 1e-3) return -0.25 - s / 6.0 - s * s / 8.0 - s * s * s / 10.0 - s * s * s * s / 12.0;
  return 0.5 * (std::log1p(-s) + s) / (s * s);
}

struct PotentialTerm {
  double integral = 0.0;
  double sup = 0.0;
  double max_value = -std::numeric_limits<double>::infinity();
};

/// int Lap(M_z(xi)) [log|xi| + (1 - |xi|^2)/2] dlambda(xi), with |xi| = x^2.
inline PotentialTerm local_potential_term(const RealField& lap, cplx z, PotentialGrid grid) {
  const QuadratureRule gl = gauss_legendre(grid.radial, 0.0, 1.0);
  const double dt = 2.0 * std::numbers::pi / grid.angular;
  PotentialTerm out;
  for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
    const double x = gl.nodes[q];
    const double t = x * x;
    const double radial_w = gl.weights[q] * potential_bracket_over_weight(t) * t * 2.0 * x;
    double ring = 0.0;
    for (int j = 0; j < grid.angular; ++j) {
      const double l = lap(moebius(z, std::polar(t, (j + 0.5) * dt)));
      out.sup = std::max(out.sup, std::abs(l));
      out.max_value = std::max(out.max_value, l);
      ring += l;
    }
    out.integral += radial_w * ring * dt;
  }
  return out;
}

/// (|z|^2 / 2) int Lap(w) / |1 - conj(w) z|^2 dA(w); every node's contribution
/// has the sign of Lap(w).
inline PotentialTerm boundary_potential_term(const RealField& lap, cplx z, PotentialGrid grid, bool& nonpositive) {
  PotentialTerm out;
  const double z2 = std::norm(z);
  for (const auto& node : disk_polar_rule(grid.radial, 2 * grid.angular)) {
    const double l = lap(node.z);
    const double contrib = 0.5 * z2 * l * node.weight / std::norm(1.0 - std::conj(node.z) * z);
    if (contrib > 0.0) nonpositive = false;
    out.sup = std::max(out.sup, std::abs(l));
    out.max_value = std::max(out.max_value, l);
    out.integral += contrib;
  }
  return out;
}

}  // namespace detail

/// u(z) = (2/pi) int Lap(w) [log|conj(w)(w - z)/(1 - conj(w) z)| + Re (1 - |w|^2)/(1 - conj(w) z)] dlambda(w),
/// a solution of d dbar u = d dbar tau when Lap is the invariant Laplacian of tau.
/// The bracket is split into a term depending on w alone, a term depending on
/// psi(w, z) alone and a remainder; the first two are integrated in
/// Moebius-centered coordinates.
inline GreenPotential green_potential(const RealField& laplacian, cplx z, PotentialGrid grid = {}) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::InvalidArgument, "z must lie in the disk");
  GreenPotential g;
  const auto t1 = detail::local_potential_term(laplacian, cplx(0.0), grid);
  const auto t2 = detail::local_potential_term(laplacian, z, grid);
  const auto t3 = detail::boundary_potential_term(laplacian, z, grid, g.third_term_nonpositive);
  const double top = std::max({t1.max_value, t2.max_value, t3.max_value});
  if (top > 0.0) throw Error(ErrorKind::PositiveLaplacian, "invariant Laplacian is positive somewhere");
  g.laplacian_sup = std::max({t1.sup, t2.sup, t3.sup});
  g.positive_part = 2.0 / std::numbers::pi * (t1.integral + t2.integral);
  g.negative_part = 2.0 / std::numbers::pi * t3.integral;
  g.value = g.positive_part + g.negative_part;
  if (!std::isfinite(g.value)) throw Error(ErrorKind::QuadratureDivergence, "potential integral is not finite");
  return g;
}

/// Frozen calibration of the absolute constant C in the majorant
/// v = tau - u + C ||Lap||_inf, measured by calibrate_majorant_constant().
inline constexpr double kMajorantConstant = 2.0;

/// max over the family Lap = -1, -0.5, -0.1 and the sample points of
/// (bounded part of u) / ||Lap||_inf.
inline double calibrate_majorant_constant(PotentialGrid grid = {}) {
  const std::vector<cplx> samples{0.0, 0.3, cplx(0.0, 0.6), cplx(-0.5, 0.5), 0.9};
  double c = 0.0;
  for (const double level : {-1.0, -0.5, -0.1}) {
    const RealField lap = [level](cplx) { return level; };
    for (const cplx z : samples) {
      const GreenPotential g = green_potential(lap, z, grid);
      c = std::max(c, std::abs(g.positive_part) / g.laplacian_sup);
    }
  }
  return c;
}

struct MajorantReport {
  double constant = 0.0;
  double laplacian_sup = 0.0;
  double max_tau_minus_v = -std::numeric_limits<double>::infinity();  // should be <= 0
  double max_harmonic_residual = 0.0;  // |invariant Laplacian of v| at the checked nodes
  std::size_t nodes = 0;
};

/// Checks tau - v <= 0 at every node and that v = tau - u + C ||Lap|| is
/// harmonic (finite-difference invariant Laplacian, step h) at every
/// `harmonic_stride`-th node.
inline MajorantReport majorant_check(const RealField& tau, const RealField& laplacian,
                                     const std::vector<cplx>& nodes, double constant = kMajorantConstant,
                                     PotentialGrid grid = {}, double h = 1e-2, std::size_t harmonic_stride = 1) {
  MajorantReport rep;
  rep.constant = constant;
  const auto t1 = detail::local_potential_term(laplacian, cplx(0.0), grid);
  bool dummy = true;
  auto u_at = [&](cplx z) {
    const auto t2 = detail::local_potential_term(laplacian, z, grid);
    const auto t3 = detail::boundary_potential_term(laplacian, z, grid, dummy);
    if (std::max({t1.max_value, t2.max_value, t3.max_value}) > 0.0) {
      throw Error(ErrorKind::PositiveLaplacian, "invariant Laplacian is positive somewhere");
    }
    rep.laplacian_sup = std::max({rep.laplacian_sup, t1.sup, t2.sup, t3.sup});
    return 2.0 / std::numbers::pi * (t1.integral + t2.integral + t3.integral);
  };
  std::vector<double> u_values;
  for (const cplx z : nodes) u_values.push_back(u_at(z));
  for (const double u : u_values) rep.max_tau_minus_v = std::max(rep.max_tau_minus_v, u - constant * rep.laplacian_sup);
  const double shift = constant * rep.laplacian_sup;
  const RealField v = [&](cplx w) { return tau(w) - u_at(w) + shift; };
  for (std::size_t k = 0; k < nodes.size(); k += std::max<std::size_t>(harmonic_stride, 1)) {
    rep.max_harmonic_residual = std::max(rep.max_harmonic_residual, std::abs(invariant_laplacian(v, nodes[k], h)));
  }
  rep.nodes = nodes.size();
  return rep;
}

/// Local mean over D(z, r) of a grid function, interpolated onto a midpoint
/// rule of the Euclidean image. Needs at least 16 grid nodes inside the disk;
/// q = infinity returns the maximum over those nodes.
inline double local_mean(const GridFunction& f, DiskPoint z, double q, double r, LocalMeanGrid inner = {}) {
  if (!(q >= 1.0)) throw Error(ErrorKind::InvalidArgument, "local_mean needs q >= 1");
  const EuclideanDisk e = pseudo_to_euclidean(PseudoDisk(z, r));
  const PolarGrid& g = f.grid();
  std::size_t inside = 0;
  double sup = 0.0;
  const int i_lo = std::max(0, static_cast<int>((std::abs(e.center) - e.radius) / g.dr() - 1.0));
  const int i_hi = std::min(g.radial - 1, static_cast<int>((std::abs(e.center) + e.radius) / g.dr() + 1.0));
  for (int i = i_lo; i <= i_hi; ++i) {
    for (int j = 0; j < g.angular; ++j) {
      if (e.contains(g.node(i, j))) {
        ++inside;
        sup = std::max(sup, std::abs(f.at(i, j)));
      }
    }
  }
  if (inside < 16) throw Error(ErrorKind::GridTooCoarse, "fewer than 16 grid nodes in the local disk");
  if (std::isinf(q)) return sup;
  return local_mean([&f](cplx w) { return f.interpolate(w); }, z, q, r, inner);
}

/// L^p(dA_alpha) norm over the grid nodes with |z| <= outer_radius of
/// z -> m_q(|f e^{k_Z}|, z, r).
inline double weighted_space_norm(const GridFunction& f, const PointSequence& zs, double p, double q, double r,
                                  double alpha, double outer_radius, LocalMeanGrid inner = {16, 32}) {
  if (!(p > 0.0)) throw Error(ErrorKind::InvalidArgument, "p must be positive");
  if (!(alpha > -1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must exceed -1");
  const PolarGrid& g = f.grid();
  GridFunction weighted(g);
  for (int i = 0; i < g.radial; ++i) {
    for (int j = 0; j < g.angular; ++j) {
      weighted.at(i, j) = std::abs(f.at(i, j)) * std::exp(k_weight(zs, g.node(i, j)));
    }
  }
  double acc = 0.0;
  for (int i = 0; i < g.radial && g.r(i) <= outer_radius; ++i) {
    const double wr = std::pow(1.0 - g.r(i) * g.r(i), alpha) * g.cell_area(i);
    for (int j = 0; j < g.angular; ++j) {
      acc += wr * std::pow(local_mean(weighted, DiskPoint(g.node(i, j)), q, r, inner), p);
    }
  }
  return std::pow(acc, 1.0 / p);
}

}  // namespace bergman
