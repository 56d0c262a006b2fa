#pragma once

// Concrete carriers for analytic functions on the disk: Bergman kernel
// expansions, shifted polynomials, Blaschke-Lagrange interpolants and
// Moebius-affine maps, each evaluable with derivatives.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <variant>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/geometry.hpp"

namespace bergman {

inline cplx ipow(cplx base, int e) {
  cplx r = 1.0;
  for (; e > 0; e >>= 1) {
    if (e & 1) r *= base;
    base *= base;
  }
  return r;
}

namespace detail {

#if defined(__SIZEOF_FLOAT128__)
using wide_real = __float128;
#else
using wide_real = long double;
#endif

/// Complex numbers over wide_real with the field operations only.
struct WideComplex {
  wide_real re = 0;
  wide_real im = 0;

  WideComplex() = default;
  WideComplex(wide_real r, wide_real i = 0) : re(r), im(i) {}
  explicit WideComplex(cplx z) : re(z.real()), im(z.imag()) {}

  cplx narrow() const { return {static_cast<double>(re), static_cast<double>(im)}; }

  friend WideComplex operator+(WideComplex a, WideComplex b) { return {a.re + b.re, a.im + b.im}; }
  friend WideComplex operator-(WideComplex a, WideComplex b) { return {a.re - b.re, a.im - b.im}; }
  friend WideComplex operator*(WideComplex a, WideComplex b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend WideComplex operator/(WideComplex a, WideComplex b) {
    const wide_real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  WideComplex& operator+=(WideComplex b) { return *this = *this + b; }
  WideComplex& operator*=(WideComplex b) { return *this = *this * b; }
};

inline WideComplex conj(WideComplex z) { return {z.re, -z.im}; }

/// pi as the sum of two doubles.
inline wide_real wide_pi() { return static_cast<wide_real>(3.141592653589793) + static_cast<wide_real>(1.2246467991473532e-16); }

template <class C>
C power(C base, int e) {
  C r(1.0);
  for (; e > 0; e >>= 1) {
    if (e & 1) r *= base;
    base *= base;
  }
  return r;
}

/// d^m/dz^m d^n/dvb^n of a / (pi (a - u vb)^2) with vb = conj(w - c).
template <class C, class R>
C kernel_derivative(C u, C vb, R a, R pi, int m, int n) {
  const C d = C(a) - u * vb;
  // d^n/dvb^n (a - u vb)^-2 = (n+1)! u^n (a - u vb)^-(n+2), then Leibniz in u.
  R n_fact1 = 1;
  for (int k = 2; k <= n + 1; ++k) n_fact1 *= k;
  C total(0.0);
  R binom = 1;  // C(m, j)
  for (int j = 0; j <= std::min(m, n); ++j) {
    R falling = 1;  // n! / (n - j)!
    for (int k = 0; k < j; ++k) falling *= n - k;
    R rising = 1;  // (n + 2)_(m - j)
    for (int k = 0; k < m - j; ++k) rising *= n + 2 + k;
    total += C(binom * falling * rising) * power(u, n - j) * power(vb, m - j) / power(d, n + 2 + m - j);
    binom = binom * (m - j) / (j + 1);
  }
  return C(a / pi * n_fact1) * total;
}

}  // namespace detail

/// Reproducing kernel of A^2 of the Euclidean disk |z - center| < radius
/// for plain area measure: s^2 / (pi (s^2 - (z - c) conj(w - c))^2).
/// The default is the kernel of the unit disk, 1 / (pi (1 - conj(w) z)^2).
struct BergmanKernel {
  cplx center{0.0, 0.0};
  double radius = 1.0;

  static BergmanKernel of(const EuclideanDisk& d) { return {d.center, d.radius}; }

  /// d^m/dz^m d^n/dconj(w)^n K(z, w).
  cplx derivative(cplx z, cplx w, int m, int n) const {
    return detail::kernel_derivative(z - center, std::conj(w - center), radius * radius, std::numbers::pi, m, n);
  }

  /// Same in extended precision, for residuals of ill-conditioned systems.
  detail::WideComplex derivative_wide(cplx z, cplx w, int m, int n) const {
    using detail::WideComplex;
    const WideComplex c(center);
    const detail::wide_real r = radius;
    return detail::kernel_derivative(WideComplex(z) - c, detail::conj(WideComplex(w) - c), r * r, detail::wide_pi(),
                                     m, n);
  }

  cplx operator()(cplx z, cplx w) const { return derivative(z, w, 0, 0); }
};

struct KernelTerm {
  cplx point;
  int order = 0;
  cplx coeff;
  cplx coeff_lo{0.0, 0.0};  // rounding remainder of coeff from refinement
};

/// f(z) = sum_j coeff_j * d^order_j/dconj(w)^order_j K(z, w)|_{w = point_j}.
struct KernelExpansion {
  BergmanKernel kernel;
  std::vector<KernelTerm> terms;
};

/// f(z) = sum_k coeffs[k] (z - center)^k.
struct Polynomial {
  cplx center{0.0, 0.0};
  std::vector<cplx> coeffs;
};

/// f(z) = sum_g values[g] prod_{b != g} M_b(z) / M_b(node_g), M_b(z) = (b - z)/(1 - conj(b) z).
struct LagrangeBlaschke {
  std::vector<cplx> nodes;
  std::vector<cplx> values;
};

/// f(z) = constant + slope * M_a(z).
struct MoebiusAffine {
  cplx a;
  cplx constant;
  cplx slope;
};

using AnalyticFunctionRep = std::variant<KernelExpansion, Polynomial, LagrangeBlaschke, MoebiusAffine>;

namespace detail {

/// Taylor coefficients M_b^(n)(z)/n! for n = 0..order.
inline std::vector<cplx> moebius_taylor(cplx b, cplx z, int order) {
  std::vector<cplx> out(static_cast<std::size_t>(order) + 1);
  const cplx bb = std::conj(b);
  const cplx d = 1.0 - bb * z;
  out[0] = (b - z) / d;
  const double m = 1.0 - std::norm(b);
  cplx bpow = 1.0;
  cplx dpow = d * d;
  for (int n = 1; n <= order; ++n) {
    out[static_cast<std::size_t>(n)] = -m * bpow / dpow;
    bpow *= bb;
    dpow *= d;
  }
  return out;
}

inline std::vector<cplx> series_product(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size(), cplx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace detail

/// f^(order)(z) for any representation.
inline cplx evaluate(const AnalyticFunctionRep& f, cplx z, int order = 0) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "negative derivative order");
  struct Visitor {
    cplx z;
    int order;
    cplx operator()(const KernelExpansion& k) const {
      cplx s = 0.0;
      for (const auto& t : k.terms) s += (t.coeff + t.coeff_lo) * k.kernel.derivative(z, t.point, order, t.order);
      return s;
    }
    cplx operator()(const Polynomial& p) const {
      cplx s = 0.0;
      const cplx u = z - p.center;
      for (std::size_t k = p.coeffs.size(); k-- > static_cast<std::size_t>(order);) {
        double falling = 1.0;
        for (int j = 0; j < order; ++j) falling *= static_cast<double>(k) - j;
        s = s * u + p.coeffs[k] * falling;
      }
      return s;
    }
    cplx operator()(const LagrangeBlaschke& l) const {
      std::vector<cplx> total(static_cast<std::size_t>(order) + 1, cplx(0.0));
      for (std::size_t g = 0; g < l.nodes.size(); ++g) {
        std::vector<cplx> prod(total.size(), cplx(0.0));
        prod[0] = l.values[g];
        for (std::size_t b = 0; b < l.nodes.size(); ++b) {
          if (b == g) continue;
          auto factor = detail::moebius_taylor(l.nodes[b], z, order);
          const cplx scale = moebius(l.nodes[b], l.nodes[g]);
          for (auto& c : factor) c /= scale;
          prod = detail::series_product(prod, factor);
        }
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += prod[i];
      }
      return total.back() * detail::factorial(order);
    }
    cplx operator()(const MoebiusAffine& m) const {
      const auto t = detail::moebius_taylor(m.a, z, order);
      const cplx base = order == 0 ? m.constant : cplx(0.0);
      return base + m.slope * t.back() * detail::factorial(order);
    }
  };
  return std::visit(Visitor{z, order}, f);
}

/// Kernel expansion evaluated in extended precision with coeff + coeff_lo.
inline cplx evaluate_precise(const KernelExpansion& k, cplx z, int order = 0) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "negative derivative order");
  detail::WideComplex s;
  for (const auto& t : k.terms) {
    const detail::WideComplex c = detail::WideComplex(t.coeff) + detail::WideComplex(t.coeff_lo);
    s += c * k.kernel.derivative_wide(z, t.point, order, t.order);
  }
  return s.narrow();
}

}  // namespace bergman
