#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "bergman/scheme.hpp"
#include "support.hpp"

namespace bergman {
namespace {

PointSequence pts(std::initializer_list<cplx> values) {
  PointSequence z;
  for (const cplx v : values) z.emplace_back(v);
  return z;
}

/// Label of each index under the transitive closure of the merge relation,
/// computed by repeated relaxation over the full adjacency matrix.
std::vector<std::size_t> closure_labels(const PointSequence& z, double eps) {
  const std::size_t n = z.size();
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  const double merge = hyp_sum(eps, eps);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (psi(z[i], z[j]) < merge && label[j] < label[i]) {
          label[i] = label[j];
          changed = true;
        }
      }
    }
  }
  return label;
}

std::vector<std::size_t> scheme_labels(const InterpolationScheme& s) {
  std::vector<std::size_t> label(s.sequence.size());
  for (const auto& c : s.clusters) {
    const std::size_t m = *std::min_element(c.members.begin(), c.members.end());
    for (std::size_t i : c.members) label[i] = m;
  }
  return label;
}

TEST(MinimalScheme, ThreePointExample) {
  const InterpolationScheme s = build_minimal_scheme(pts({0.0, 0.05, 0.9}), 0.1);
  ASSERT_EQ(s.clusters.size(), 2u);
  EXPECT_EQ(s.clusters[0].members, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s.clusters[1].members, (std::vector<std::size_t>{2}));
  EXPECT_NEAR(s.separation, psi(0.05, 0.9), 1e-15);
  EXPECT_NEAR(psi(0.05, 0.9), 0.8901, 1e-4);
  EXPECT_EQ(s.inner_radius, 0.1);
  EXPECT_EQ(s.cluster_bound, 2u);
}

TEST(MinimalScheme, SingletonDomainIsTheEpsilonBall) {
  const InterpolationScheme s = build_minimal_scheme(pts({cplx(0.2, 0.3)}), 0.15);
  ASSERT_EQ(s.clusters.size(), 1u);
  const auto pieces = s.domains[0].pieces();
  ASSERT_EQ(pieces.size(), 1u);
  EXPECT_EQ(pieces[0].center().value(), cplx(0.2, 0.3));
  EXPECT_EQ(pieces[0].radius(), 0.15);
  EXPECT_NEAR(s.diameter, hyp_sum(0.15, 0.15), 1e-3);
}

TEST(MinimalScheme, RepeatedPointsShareACluster) {
  const InterpolationScheme s = build_minimal_scheme(pts({0.0, 0.0, 0.3}), 0.2);
  EXPECT_LT(0.3, hyp_sum(0.2, 0.2));
  EXPECT_NEAR(hyp_sum(0.2, 0.2), 0.3846, 1e-4);
  ASSERT_EQ(s.clusters.size(), 1u);
  EXPECT_EQ(s.clusters[0].members.size(), 3u);
  EXPECT_EQ(s.domains[0].balls().centers.size(), 2u);
}

TEST(MinimalScheme, RejectsBadInput) {
  EXPECT_THROW(build_minimal_scheme({}, 0.1), Error);
  EXPECT_THROW(build_minimal_scheme(pts({0.0}), 0.0), Error);
  EXPECT_THROW(build_minimal_scheme(pts({0.0}), 1.0), Error);
}

TEST(MinimalScheme, DiameterOverflowForHugeEpsilon) {
  try {
    build_minimal_scheme(pts({0.3}), 0.99999);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DiameterOverflow);
  }
}

TEST(MinimalScheme, PartitionEqualsTransitiveClosure) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> size(1, 200);
  std::uniform_real_distribution<double> eps(0.01, 0.2);
  for (int trial = 0; trial < 100; ++trial) {
    const PointSequence z = testing::random_sequence(rng, size(rng), 0.9);
    const double e = eps(rng);
    const InterpolationScheme s = build_minimal_scheme(z, e);
    EXPECT_EQ(scheme_labels(s), closure_labels(z, e));
  }
}

TEST(MinimalScheme, DifferentClustersAreAtLeastTheMergeThresholdApart) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    const PointSequence z = testing::random_sequence(rng, 80, 0.9);
    const double e = 0.05;
    const InterpolationScheme s = build_minimal_scheme(z, e);
    const auto label = scheme_labels(s);
    for (std::size_t i = 0; i < z.size(); ++i) {
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (label[i] != label[j]) EXPECT_GE(psi(z[i], z[j]), hyp_sum(e, e));
      }
    }
  }
}

TEST(MinimalScheme, PartitionIsMoebiusCovariant) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 20; ++trial) {
    const PointSequence z = testing::random_sequence(rng, 60, 0.8);
    const cplx a = testing::random_point(rng, 0.5);
    PointSequence w;
    for (const auto& p : z) w.emplace_back(moebius(a, p.value()));
    EXPECT_EQ(scheme_labels(build_minimal_scheme(z, 0.07)), scheme_labels(build_minimal_scheme(w, 0.07)));
  }
}

TEST(AutoEpsilon, SinglePointSolvesTheOneStepRecursion) {
  const double e = auto_epsilon(pts({0.0}), 0.5);
  EXPECT_LE(hyp_sum(e, hyp_sum(e, e)), 0.5);
  EXPECT_NEAR(hyp_sum(e, hyp_sum(e, e)), 0.5, 1e-9);
  // hyp_sum of three equal radii is tanh(3 atanh(e))
  EXPECT_NEAR(e, std::tanh(std::atanh(0.5) / 3.0), 1e-9);
}

TEST(AutoEpsilon, RecursionIsIncreasing) {
  for (const double e : {1e-4, 0.01, 0.1, 0.3}) {
    for (std::size_t k = 0; k < 5; ++k) EXPECT_GT(radius_recursion(e, k + 1), radius_recursion(e, k));
  }
  EXPECT_EQ(radius_recursion(0.2, 0), 0.2);
}

TEST(AutoEpsilon, NoValidEpsilonWhenTooCrowded) {
  PointSequence z(300, DiskPoint(0.0));
  try {
    auto_epsilon(z, 1e-4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoValidEpsilon);
  }
}

TEST(AutoEpsilon, BuildIsAdmissibleForBoundedDensityInputs) {
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<std::size_t> size(1, 200);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const PointSequence z = testing::random_sequence(rng, size(rng), 0.9);
    if (bounded_density(z, 0.5) > 10) continue;
    ++checked;
    const double e = auto_epsilon(z, 0.5);
    const InterpolationScheme s = build_minimal_scheme(z, e);
    const AdmissibilityReport r = check_admissibility(s);
    EXPECT_TRUE(r.admissible());
    EXPECT_LE(s.diameter, 0.5 + 1e-9);
  }
  EXPECT_GT(checked, 5);
}

TEST(MaximalScheme, SingletonAndPair) {
  const InterpolationScheme single = build_maximal_scheme(pts({cplx(0.1, -0.2)}), 0.2);
  ASSERT_TRUE(single.domains[0].is_disk());
  EXPECT_EQ(single.domains[0].disk().radius(), 0.2);

  const InterpolationScheme pair = build_maximal_scheme(pts({0.0, 0.1}), 0.06);
  ASSERT_EQ(pair.clusters.size(), 1u);
  ASSERT_TRUE(pair.domains[0].is_disk());
  EXPECT_EQ(pair.domains[0].disk().center().value(), cplx(0.0));  // tie broken by lowest index
  EXPECT_NEAR(pair.domains[0].disk().radius(), 0.16, 1e-15);

  // 0.1 is beyond hyp_sum(0.05, 0.05), so at epsilon 0.05 the points do not merge.
  const InterpolationScheme split = build_maximal_scheme(pts({0.0, 0.1}), 0.05);
  EXPECT_EQ(split.clusters.size(), 2u);
  EXPECT_EQ(split.domains[1].disk().radius(), 0.05);
}

TEST(MaximalScheme, ContainsTheMinimalDomain) {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 20; ++trial) {
    const PointSequence z = testing::random_sequence(rng, 40, 0.85);
    const InterpolationScheme lo = build_minimal_scheme(z, 0.08);
    const InterpolationScheme hi = build_maximal_scheme(z, 0.08);
    ASSERT_EQ(scheme_labels(lo), scheme_labels(hi));
    for (std::size_t k = 0; k < lo.domains.size(); ++k) {
      for (const cplx b : lo.domains[k].boundary_points(16)) {
        // points just inside the minimal domain lie in the maximal one
        const cplx c = lo.domains[k].pieces()[0].center().value();
        EXPECT_TRUE(hi.domains[k].contains(c + (b - c) * (1.0 - 1e-9)) || !lo.domains[k].contains(c + (b - c) * (1.0 - 1e-9)));
      }
      for (std::size_t i : lo.clusters[k].members) EXPECT_TRUE(hi.domains[k].contains(z[i].value()));
    }
  }
}

TEST(Admissibility, MinimalSchemePassesItsOwnConstants) {
  const AdmissibilityReport r = check_admissibility(build_minimal_scheme(pts({0.0, 0.05, 0.9}), 0.1));
  EXPECT_TRUE(r.partition_ok);
  EXPECT_TRUE(r.admissible());
  EXPECT_NEAR(r.inner_radius, 0.1, 1e-12);
  EXPECT_EQ(r.cluster_bound, 2u);
}

TEST(Admissibility, SharedPointValueBreaksSeparation) {
  InterpolationScheme s = build_minimal_scheme(pts({0.5, 0.5}), 0.1);
  s.clusters = {Cluster{{0}}, Cluster{{1}}};
  s.domains = {Domain(PseudoDisk(DiskPoint(0.5), 0.1)), Domain(PseudoDisk(DiskPoint(0.5), 0.1))};
  const AdmissibilityReport r = check_admissibility(s);
  EXPECT_FALSE(r.p3_ok);
  EXPECT_EQ(r.separation, 0.0);
}

TEST(Admissibility, ClusterBoundViolation) {
  InterpolationScheme s = build_minimal_scheme(PointSequence(20, DiskPoint(0.0)), 0.1);
  s.cluster_bound = 10;
  const AdmissibilityReport r = check_admissibility(s);
  EXPECT_FALSE(r.p4_ok);
  EXPECT_EQ(r.cluster_bound, 20u);
}

TEST(Admissibility, BrokenPartitionIsReported) {
  InterpolationScheme s = build_minimal_scheme(pts({0.0, 0.5}), 0.1);
  s.clusters[1].members = {0};
  EXPECT_FALSE(check_admissibility(s).partition_ok);
}

TEST(BoundedDensity, Examples) {
  EXPECT_EQ(bounded_density(pts({0.0}), 0.4), 1u);
  EXPECT_EQ(bounded_density(pts({0.0, 0.0, 0.0}), 0.1), 3u);
  const cplx m = geodesic_midpoint(0.0, 0.5);
  EXPECT_LT(psi(m, 0.0), 0.3);
  EXPECT_LT(psi(m, 0.5), 0.3);
  EXPECT_EQ(bounded_density(pts({0.0, 0.5}), 0.3), 2u);
  EXPECT_EQ(bounded_density(pts({0.0, 0.5}), 0.2), 1u);
}

TEST(BoundedDensity, MatchesFineGridBruteForceOnSmallInstances) {
  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 10; ++trial) {
    const PointSequence z = testing::random_sequence(rng, 8, 0.6);
    const double r = 0.35;
    std::size_t brute = 0;
    for (double x = -0.99; x < 0.99; x += 0.01) {
      for (double y = -0.99; y < 0.99; y += 0.01) {
        if (x * x + y * y >= 0.98) continue;
        std::size_t k = 0;
        for (const auto& p : z) k += psi(cplx(x, y), p.value()) < r ? 1 : 0;
        brute = std::max(brute, k);
      }
    }
    EXPECT_GE(bounded_density(z, r), brute);
  }
}

TEST(BoundedDensity, NondecreasingInRadius) {
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 10; ++trial) {
    const PointSequence z = testing::random_sequence(rng, 15, 0.9);
    std::size_t last = 0;
    for (double r = 0.05; r < 0.8; r += 0.05) {
      const std::size_t m = bounded_density(z, r);
      EXPECT_GE(m, last);
      last = m;
    }
  }
}

TEST(OverlapBound, Examples) {
  EXPECT_EQ(overlap_bound(build_minimal_scheme(pts({0.0, 0.05, 0.9}), 0.1)), 1u);
  InterpolationScheme s = build_minimal_scheme(pts({0.0, 0.9}), 0.1);
  EXPECT_EQ(overlap_bound(s), 1u);
  s.domains[1] = s.domains[0];
  EXPECT_EQ(overlap_bound(s), 2u);
}

}  // namespace
}  // namespace bergman
