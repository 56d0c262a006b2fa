#pragma once

// Minimum-norm interpolation with jet constraints: exact p = 2 solves through
// reproducing kernels, quotient norms of the local target spaces and the
// sequence-space norm built from them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bergman/analytic.hpp"
#include "bergman/error.hpp"
#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/scheme.hpp"

namespace bergman {

/// f^(order)(point) = value.
struct JetConstraint {
  DiskPoint point;
  int order = 0;
  cplx value;
};

/// Per-cluster constraint lists, parallel to a scheme's clusters.
struct JetTargets {
  std::vector<std::vector<JetConstraint>> clusters;

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& c : clusters) n += c.size();
    return n;
  }
  std::vector<JetConstraint> flatten() const {
    std::vector<JetConstraint> out;
    for (const auto& c : clusters) out.insert(out.end(), c.begin(), c.end());
    return out;
  }
};

/// Condition number (after diagonal scaling) beyond which a Gram matrix is
/// treated as singular.
inline constexpr double kGramConditionLimit = 1e12;

/// Targets from one value per sequence entry: the j-th repetition of a point
/// prescribes its j-th derivative.
inline JetTargets targets_from_values(const InterpolationScheme& s, const std::vector<cplx>& values) {
  if (values.size() != s.sequence.size()) {
    throw Error(ErrorKind::MalformedJet, "need one target value per sequence entry");
  }
  JetTargets t;
  for (const auto& c : s.clusters) {
    std::vector<JetConstraint> list;
    for (std::size_t i : c.members) {
      int order = 0;
      for (const auto& prev : list) order += prev.point == s.sequence[i] ? 1 : 0;
      list.push_back({s.sequence[i], order, values[i]});
    }
    t.clusters.push_back(std::move(list));
  }
  return t;
}

/// Checks the jet invariants against a scheme: every constraint sits on a
/// point of its cluster, orders stay below the point's multiplicity and no
/// (point, order) pair repeats.
inline void validate_targets(const InterpolationScheme& s, const JetTargets& t) {
  if (t.clusters.size() != s.clusters.size()) {
    throw Error(ErrorKind::MalformedJet, "targets are not parallel to the scheme's clusters");
  }
  for (std::size_t k = 0; k < s.clusters.size(); ++k) {
    const auto& list = t.clusters[k];
    for (std::size_t a = 0; a < list.size(); ++a) {
      int multiplicity = 0;
      for (std::size_t i : s.clusters[k].members) multiplicity += s.sequence[i] == list[a].point;
      if (multiplicity == 0) throw Error(ErrorKind::MalformedJet, "constraint point not in its cluster");
      if (list[a].order < 0 || list[a].order >= multiplicity) {
        throw Error(ErrorKind::MalformedJet, "derivative order exceeds the point's multiplicity");
      }
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        if (list[b].point == list[a].point && list[b].order == list[a].order) {
          throw Error(ErrorKind::MalformedJet, "repeated (point, order) constraint");
        }
      }
    }
  }
}

struct GramSolution {
  KernelExpansion function;
  double norm = 0.0;
  double condition = 1.0;
};

/// Minimum-norm element of the kernel's space meeting the constraints:
/// f = sum c_j K_j with G c = w, ||f||^2 = w* G^-1 w.
inline GramSolution min_norm_solve(const BergmanKernel& kernel,
                                   const std::vector<JetConstraint>& constraints) {
  const auto n = static_cast<Eigen::Index>(constraints.size());
  GramSolution sol;
  sol.function.kernel = kernel;
  if (n == 0) return sol;
  Eigen::MatrixXcd g(n, n);
  Eigen::VectorXcd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& ci = constraints[static_cast<std::size_t>(i)];
    w(i) = ci.value;
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& cj = constraints[static_cast<std::size_t>(j)];
      g(i, j) = kernel.derivative(ci.point.value(), cj.point.value(), ci.order, cj.order);
    }
  }
  Eigen::VectorXd scale(n);
  for (Eigen::Index i = 0; i < n; ++i) scale(i) = 1.0 / std::sqrt(g(i, i).real());
  const Eigen::MatrixXcd gs = scale.asDiagonal() * g * scale.asDiagonal();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gs, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  sol.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(sol.condition <= kGramConditionLimit)) {
    throw Error(ErrorKind::SingularGram, "Gram matrix condition number exceeds 1e12");
  }
  const Eigen::LDLT<Eigen::MatrixXcd> ldlt(gs);
  auto correction = [&](const Eigen::VectorXcd& r) -> Eigen::VectorXcd {
    return scale.asDiagonal() * ldlt.solve(scale.asDiagonal() * r);
  };

  // Mixed-precision refinement: residuals of the Gram system are formed in
  // extended precision so the constraints hold far below eps * condition.
  using detail::WideComplex;
  std::vector<WideComplex> gw(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& ci = constraints[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& cj = constraints[static_cast<std::size_t>(j)];
      gw[static_cast<std::size_t>(i * n + j)] =
          kernel.derivative_wide(ci.point.value(), cj.point.value(), ci.order, cj.order);
    }
  }
  const Eigen::VectorXcd c0 = correction(w);
  std::vector<WideComplex> c(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] = WideComplex(c0(j));
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 8; ++it) {
    Eigen::VectorXcd r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      WideComplex acc(w(i));
      for (Eigen::Index j = 0; j < n; ++j) {
        acc = acc - gw[static_cast<std::size_t>(i * n + j)] * c[static_cast<std::size_t>(j)];
      }
      r(i) = acc.narrow();
    }
    const double size = r.cwiseAbs().maxCoeff();
    if (size == 0.0 || !(size < 0.5 * previous)) break;
    previous = size;
    const Eigen::VectorXcd delta = correction(r);
    for (Eigen::Index j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] += WideComplex(delta(j));
  }

  WideComplex energy;
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& cj = constraints[static_cast<std::size_t>(j)];
    const WideComplex& cw = c[static_cast<std::size_t>(j)];
    energy += detail::conj(WideComplex(w(j))) * cw;
    const cplx hi = cw.narrow();
    sol.function.terms.push_back({cj.point.value(), cj.order, hi, (cw - WideComplex(hi)).narrow()});
  }
  sol.norm = std::sqrt(std::max(0.0, static_cast<double>(energy.re)));
  return sol;
}

/// Exact quotient norm in A^2 of a pseudohyperbolic disk.
inline double quotient_norm_p2(const PseudoDisk& domain, const std::vector<JetConstraint>& constraints) {
  for (const auto& c : constraints) {
    if (!(psi(domain.center(), c.point) < domain.radius())) {
      throw Error(ErrorKind::InvalidArgument, "constraint point outside the domain");
    }
  }
  return min_norm_solve(BergmanKernel::of(pseudo_to_euclidean(domain)), constraints).norm;
}

struct QuadratureSpec {
  int radial = 48;
  int angular = 96;
};

struct QuotientSolution {
  double value = 0.0;
  Polynomial function;
  int iterations = 0;
};

namespace detail {

/// Quadrature nodes on a domain: a Gauss polar rule per piece, weights
/// divided by the number of pieces covering the node.
inline std::vector<PolarNode> domain_rule(const Domain& d, QuadratureSpec grid) {
  const auto pieces = d.pieces();
  std::vector<PolarNode> out;
  for (const auto& piece : pieces) {
    const EuclideanDisk e = pseudo_to_euclidean(piece);
    for (auto node : gauss_disk_rule(e.center, e.radius, grid.radial, grid.angular)) {
      int cover = 0;
      for (const auto& other : pieces) cover += psi(other.center().value(), node.z) < other.radius();
      node.weight /= std::max(cover, 1);
      out.push_back(node);
    }
  }
  return out;
}

/// Center and scale of the shifted monomial basis on a domain.
inline std::pair<cplx, double> basis_frame(const Domain& d) {
  const auto pieces = d.pieces();
  cplx c = 0.0;
  for (const auto& p : pieces) c += pseudo_to_euclidean(p).center;
  c /= static_cast<double>(pieces.size());
  double s = 0.0;
  for (const auto& p : pieces) {
    const EuclideanDisk e = pseudo_to_euclidean(p);
    s = std::max(s, std::abs(e.center - c) + e.radius);
  }
  return {c, s};
}

}  // namespace detail

/// Minimum of (int_domain |g|^p dA)^(1/p) over polynomials g of degree
/// < basis_size meeting the constraints. p = 2 is a weighted least-squares
/// problem; other p >= 1 use damped Newton on a smoothed convex objective
/// started from the p = 2 solution.
inline QuotientSolution quotient_solve_general(const Domain& domain,
                                               const std::vector<JetConstraint>& constraints,
                                               double p, int basis_size, QuadratureSpec grid = {}) {
  using Eigen::Index;
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidArgument, "general quotient norms need p >= 1");
  if (basis_size < static_cast<int>(constraints.size()) || basis_size < 1) {
    throw Error(ErrorKind::InvalidArgument, "basis_size must cover the constraints");
  }
  for (const auto& c : constraints) {
    if (!domain.contains(c.point.value())) {
      throw Error(ErrorKind::InvalidArgument, "constraint point outside the domain");
    }
  }
  const auto [center, scale] = detail::basis_frame(domain);
  const Index nb = basis_size;
  const Index nc = static_cast<Index>(constraints.size());

  QuotientSolution out;
  out.function.center = center;
  out.function.coeffs.assign(static_cast<std::size_t>(nb), cplx(0.0));

  // Constraint rows on the scaled basis ((z - c)/s)^k.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(nc, nb);
  Eigen::VectorXcd w(nc);
  for (Index i = 0; i < nc; ++i) {
    const auto& ci = constraints[static_cast<std::size_t>(i)];
    w(i) = ci.value;
    const cplx u = ci.point.value() - center;
    for (Index k = ci.order; k < nb; ++k) {
      double falling = 1.0;
      for (int j = 0; j < ci.order; ++j) falling *= static_cast<double>(k - j);
      a(i, k) = falling * ipow(u, static_cast<int>(k) - ci.order) / std::pow(scale, static_cast<double>(k));
    }
  }

  Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(nb);
  Eigen::MatrixXcd null_basis = Eigen::MatrixXcd::Identity(nb, nb);
  if (nc > 0) {
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a.adjoint());
    if (qr.rank() < nc) {
      throw Error(ErrorKind::InfeasibleConstraints, "constraints are dependent in this basis");
    }
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(nb, nb);
    // A = P R^* Q1^*, so c0 = Q1 R^-* P^T w solves A c0 = w.
    const Eigen::MatrixXcd r = qr.matrixR().topLeftCorner(nc, nc).template triangularView<Eigen::Upper>();
    const Eigen::VectorXcd pw = qr.colsPermutation().transpose() * w;
    const Eigen::VectorXcd y = r.adjoint().triangularView<Eigen::Lower>().solve(pw);
    c0 = q.leftCols(nc) * y;
    null_basis = q.rightCols(nb - nc);
    if ((a * c0 - w).norm() > 1e-8 * std::max(1.0, w.norm())) {
      throw Error(ErrorKind::InfeasibleConstraints, "constraint system has no solution in the basis");
    }
  }

  const auto rule = detail::domain_rule(domain, grid);
  const auto nq = static_cast<Index>(rule.size());
  Eigen::MatrixXcd phi(nq, nb);
  Eigen::VectorXd wq(nq);
  for (Index q = 0; q < nq; ++q) {
    const cplx u = (rule[static_cast<std::size_t>(q)].z - center) / scale;
    cplx pw = 1.0;
    for (Index k = 0; k < nb; ++k) {
      phi(q, k) = pw;
      pw *= u;
    }
    wq(q) = rule[static_cast<std::size_t>(q)].weight;
  }
  const Eigen::VectorXcd g0 = phi * c0;
  const Eigen::MatrixXcd b = phi * null_basis;
  const Index d = b.cols();

  Eigen::VectorXcd yopt = Eigen::VectorXcd::Zero(d);
  if (d > 0) {
    const Eigen::VectorXd sw = wq.cwiseSqrt();
    const Eigen::MatrixXcd bw = sw.asDiagonal() * b;
    const Eigen::VectorXcd gw = sw.asDiagonal() * g0;
    yopt = -bw.colPivHouseholderQr().solve(gw);
  }

  auto objective = [&](const Eigen::VectorXcd& g, double eta) {
    double f = 0.0;
    for (Index q = 0; q < nq; ++q) f += wq(q) * std::pow(std::norm(g(q)) + eta * eta, 0.5 * p);
    return f;
  };

  if (p != 2.0 && d > 0 && (g0 + b * yopt).squaredNorm() > 0.0) {
    // Real coordinates x = [Re y; Im y]; g = g0 + B y.
    const Eigen::MatrixXd br = b.real();
    const Eigen::MatrixXd bi = b.imag();
    Eigen::VectorXd x(2 * d);
    x << yopt.real(), yopt.imag();
    auto to_g = [&](const Eigen::VectorXd& xv) {
      const Eigen::VectorXcd y = xv.head(d).cast<cplx>() + cplx(0.0, 1.0) * xv.tail(d).cast<cplx>();
      return Eigen::VectorXcd(g0 + b * y);
    };
    const double rms = std::sqrt(to_g(x).squaredNorm() / static_cast<double>(nq));
    double eta = 1e-2 * rms;
    const double eta_final = 1e-9 * rms;
    const int max_iter = 200;
    int iter = 0;
    bool converged = false;
    while (true) {
      bool stage_done = false;
      for (int k = 0; k < 60 && iter < max_iter; ++k, ++iter) {
        const Eigen::VectorXcd g = to_g(x);
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 * d);
        Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(2 * d, 2 * d);
        Eigen::MatrixXd jq(2, 2 * d);
        for (Index q = 0; q < nq; ++q) {
          const double re = g(q).real(), im = g(q).imag();
          const double s = re * re + im * im + eta * eta;
          const double c1 = p * std::pow(s, 0.5 * p - 1.0);
          const double c2 = p * (p - 2.0) * std::pow(s, 0.5 * p - 2.0);
          jq.row(0) << br.row(q), -bi.row(q);
          jq.row(1) << bi.row(q), br.row(q);
          Eigen::Vector2d v(re, im);
          grad.noalias() += wq(q) * c1 * (jq.transpose() * v);
          Eigen::Matrix2d h = c1 * Eigen::Matrix2d::Identity() + c2 * v * v.transpose();
          hess.noalias() += wq(q) * (jq.transpose() * h * jq);
        }
        hess.diagonal().array() += 1e-14 * hess.diagonal().cwiseAbs().maxCoeff();
        const Eigen::VectorXd step = -hess.ldlt().solve(grad);
        const double decrement = -grad.dot(step);
        const double f0 = objective(g, eta);
        if (!(decrement > 1e-13 * f0)) {
          stage_done = true;
          break;
        }
        double t = 1.0;
        while (t > 1e-12 && objective(to_g(x + t * step), eta) > f0 - 0.25 * t * decrement) t *= 0.5;
        x += t * step;
      }
      if (!stage_done) break;
      if (eta <= eta_final) {
        converged = true;
        break;
      }
      eta = std::max(eta * 1e-2, eta_final);
    }
    out.iterations = iter;
    if (!converged) throw Error(ErrorKind::NonConvergence, "Newton iteration budget exhausted");
    yopt = x.head(d).cast<cplx>() + cplx(0.0, 1.0) * x.tail(d).cast<cplx>();
  }

  const Eigen::VectorXcd coeffs = c0 + null_basis * yopt;
  for (Index k = 0; k < nb; ++k) {
    out.function.coeffs[static_cast<std::size_t>(k)] = coeffs(k) / std::pow(scale, static_cast<double>(k));
  }
  out.value = std::pow(objective(phi * coeffs, 0.0), 1.0 / p);
  return out;
}

inline double quotient_norm_general(const Domain& domain, const std::vector<JetConstraint>& constraints,
                                    double p, int basis_size, QuadratureSpec grid = {}) {
  return quotient_solve_general(domain, constraints, p, basis_size, grid).value;
}

/// Basis size used by target_norm on the general path.
inline int default_basis_size(std::size_t constraints) {
  return std::max(24, static_cast<int>(constraints) + 8);
}

/// Quotient norm of one cluster's data on its domain.
inline double cluster_quotient_norm(const Domain& d, const std::vector<JetConstraint>& c, double p) {
  if (c.empty()) return 0.0;
  if (p == 2.0) {
    const auto pieces = d.pieces();
    if (pieces.size() == 1) return quotient_norm_p2(pieces.front(), c);
  }
  return quotient_norm_general(d, c, p, default_basis_size(c.size()));
}

/// Sequence-space norm: (sum_k ||w_k||_{E_k}^p)^(1/p).
inline double target_norm(const InterpolationScheme& s, const JetTargets& t, double p) {
  if (t.clusters.size() != s.clusters.size()) {
    throw Error(ErrorKind::MalformedJet, "targets are not parallel to the scheme's clusters");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < s.clusters.size(); ++k) {
    acc += std::pow(cluster_quotient_norm(s.domains[k], t.clusters[k], p), p);
  }
  return std::pow(acc, 1.0 / p);
}

struct SolveReport {
  AnalyticFunctionRep function;
  double norm_value = 0.0;
  double target_norm = 0.0;
  std::vector<cplx> residuals;  // flattened in cluster order
};

/// Global minimum-norm interpolant in A^2 of the unit disk.
inline SolveReport solve_p2(const InterpolationScheme& s, const JetTargets& t) {
  validate_targets(s, t);
  const auto flat = t.flatten();
  GramSolution g = min_norm_solve(BergmanKernel{}, flat);
  SolveReport rep;
  rep.norm_value = g.norm;
  rep.function = std::move(g.function);
  const auto& k = std::get<KernelExpansion>(rep.function);
  for (const auto& c : flat) rep.residuals.push_back(evaluate_precise(k, c.point.value(), c.order) - c.value);
  rep.target_norm = target_norm(s, t, 2.0);
  return rep;
}

/// Largest observed ratio ||f||_{A^2} / ||w||_X over random unit targets.
inline double interpolation_constant_probe(const InterpolationScheme& s, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "probe needs at least one trial");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const JetTargets shape = targets_from_values(s, std::vector<cplx>(s.sequence.size(), cplx(0.0)));
  double best = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    JetTargets t = shape;
    double norm2 = 0.0;
    for (auto& cl : t.clusters) {
      for (auto& c : cl) {
        c.value = cplx(normal(rng), normal(rng));
        norm2 += std::norm(c.value);
      }
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& cl : t.clusters) {
      for (auto& c : cl) c.value *= inv;
    }
    const double global = min_norm_solve(BergmanKernel{}, t.flatten()).norm;
    best = std::max(best, global / target_norm(s, t, 2.0));
  }
  return best;
}

}  // namespace bergman
