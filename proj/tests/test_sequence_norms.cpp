#include <gtest/gtest.h>

#include <random>

#include "bergman/interpolation.hpp"
#include "bergman/sequence_norms.hpp"
#include "support.hpp"

namespace bergman {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Example1, ValuesAndHomogeneity) {
  EXPECT_EQ(example1_norm({DiskPoint(0.0)}, {1.0}, 2.0), 1.0);
  const PointSequence z{DiskPoint(0.5), DiskPoint(0.0, -0.3)};
  const std::vector<cplx> w{cplx(1.0, 1.0), -2.0};
  // (2 * 0.75^2 + 4 * 0.91^2)^(1/2)
  EXPECT_NEAR(example1_norm(z, w, 2.0), std::sqrt(2.0 * 0.5625 + 4.0 * 0.91 * 0.91), 1e-15);
  for (const double p : {1.0, 2.0, 3.5}) {
    EXPECT_NEAR(example1_norm(z, {w[0] * 3.0, w[1] * 3.0}, p), 3.0 * example1_norm(z, w, p), 1e-13);
  }
}

TEST(Example1, ComparableWithTargetNormOnHalfDisks) {
  std::mt19937_64 rng(41);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const PointSequence z = testing::separated_sequence(rng, 6, 0.3, 0.95);
    InterpolationScheme s = build_minimal_scheme(z, 0.01);
    for (std::size_t k = 0; k < s.clusters.size(); ++k) s.domains[k] = PseudoDisk(z[k], 0.5);
    std::vector<cplx> w;
    for (std::size_t i = 0; i < z.size(); ++i) w.push_back(testing::random_value(rng));
    const double ratio = target_norm(s, targets_from_values(s, w), 2.0) / example1_norm(z, w, 2.0);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const double c_r = std::max(hi, 1.0 / lo);
  RecordProperty("C_R", std::to_string(c_r));
  EXPECT_LT(c_r, 10.0);
  EXPECT_GT(lo, 0.0);
}

TEST(Example2, ReducesToExample1AndEvaluatesJets) {
  const std::vector<PointJets> plain{{DiskPoint(0.2), {2.0}}, {DiskPoint(0.0, 0.6), {cplx(0.0, 1.0)}}};
  EXPECT_EQ(example2_norm(plain, 3.0),
            example1_norm({DiskPoint(0.2), DiskPoint(0.0, 0.6)}, {2.0, cplx(0.0, 1.0)}, 3.0));
  EXPECT_EQ(example2_norm({{DiskPoint(0.0), {0.0, 1.0}}}, 2.0), 1.0);
  const std::vector<PointJets> jets{{DiskPoint(0.4), {1.0, 2.0, -1.0}}};
  const std::vector<PointJets> scaled{{DiskPoint(0.4), {2.5, 5.0, -2.5}}};
  EXPECT_NEAR(example2_norm(scaled, 2.0), 2.5 * example2_norm(jets, 2.0), 1e-14);
}

TEST(Example3, RepresentativeInterpolatesBothNodes) {
  const AnalyticFunctionRep f = example3_representative(DiskPoint(0.0), DiskPoint(0.5), 0.0, 1.0);
  EXPECT_LT(std::abs(evaluate(f, 0.0)), 1e-14);
  EXPECT_LT(std::abs(evaluate(f, 0.5) - 1.0), 1e-14);
  // here f(z) = -M_0(z)/0.5 = 2z
  EXPECT_LT(std::abs(evaluate(f, cplx(0.1, 0.3)) - cplx(0.2, 0.6)), 1e-15);

  const AnalyticFunctionRep c = example3_representative(DiskPoint(0.3), DiskPoint(0.2, 0.4), 2.0, 2.0);
  EXPECT_EQ(evaluate(c, cplx(-0.5, 0.1)), cplx(2.0));

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const DiskPoint a(testing::random_point(rng)), b(testing::random_point(rng));
    const cplx u = testing::random_value(rng), v = testing::random_value(rng);
    const auto f1 = example3_representative(a, b, u, v);
    const auto f2 = example3_representative(b, a, v, u);
    for (const auto& g : {f1, f2}) {
      EXPECT_LT(std::abs(evaluate(g, a.value()) - u), 1e-12 * (1.0 + std::abs(u) + std::abs(v)));
      EXPECT_LT(std::abs(evaluate(g, b.value()) - v), 1e-12 * (1.0 + std::abs(u) + std::abs(v)));
    }
  }
  EXPECT_THROW(example3_representative(DiskPoint(0.1), DiskPoint(0.1), 0.0, 1.0), Error);
}

TEST(Example3, NormValuesAndErrors) {
  EXPECT_NEAR(example3_norm({{DiskPoint(0.0), DiskPoint(0.5), 0.0, 1.0}}, 2.0), 2.0, 1e-15);
  const std::vector<PairData> same{{DiskPoint(0.3), DiskPoint(0.35), 2.0, 2.0},
                                   {DiskPoint(0.0, -0.6), DiskPoint(0.0, -0.5), -1.0, -1.0}};
  EXPECT_NEAR(example3_norm(same, 1.5),
              example1_norm({DiskPoint(0.3), DiskPoint(0.0, -0.6)}, {2.0, -1.0}, 1.5), 1e-14);
  const std::vector<PairData> scaled{{DiskPoint(0.3), DiskPoint(0.35), 6.0, 6.0},
                                     {DiskPoint(0.0, -0.6), DiskPoint(0.0, -0.5), -3.0, -3.0}};
  EXPECT_NEAR(example3_norm(scaled, 1.5), 3.0 * example3_norm(same, 1.5), 1e-13);
  try {
    example3_norm({{DiskPoint(-0.95), DiskPoint(0.95), 0.0, 1.0}}, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PairTooFar);
  }
}

TEST(OWeight, ConventionsAndScaling) {
  EXPECT_EQ(o_interp_weight({DiskPoint(0.0)}, {1.0}, 2.0, 0.0), 1.0);
  const PointSequence z{DiskPoint(0.0), DiskPoint(0.1), DiskPoint(0.0, 0.2)};
  const std::vector<cplx> c{1.0, cplx(0.0, 2.0), -0.5};
  const double base = o_interp_weight(z, c, 2.0, 0.5);
  EXPECT_NEAR(o_interp_weight(z, {3.0 * c[0], 3.0 * c[1], 3.0 * c[2]}, 2.0, 0.5), 9.0 * base, 1e-12 * base);
  PointSequence far = z;
  far.emplace_back(-0.9);
  for (std::size_t g = 0; g < z.size(); ++g) EXPECT_EQ(crowding(far, g).n_exclusive, crowding(z, g).n_exclusive);
  EXPECT_THROW(o_interp_weight({DiskPoint(0.1), DiskPoint(0.1)}, {1.0, 1.0}, 2.0, 0.0), Error);
}

TEST(Crowding, CountsAndDistance) {
  const PointSequence z{DiskPoint(0.0), DiskPoint(0.3), DiskPoint(0.9)};
  const Crowding c = crowding(z, 0);
  EXPECT_EQ(c.n_exclusive, 1u);
  EXPECT_EQ(c.n_inclusive, 2u);
  EXPECT_DOUBLE_EQ(c.delta, 0.3);
  EXPECT_EQ(crowding({DiskPoint(0.4)}, 0).delta, 1.0);
}

TEST(Lagrange, ExamplesAndExactness) {
  const auto one = lagrange_cluster_interpolant({DiskPoint(0.2)}, {cplx(3.0, 1.0)});
  EXPECT_EQ(evaluate(one, cplx(-0.4, 0.4)), cplx(3.0, 1.0));

  const auto two = lagrange_cluster_interpolant({DiskPoint(0.0), DiskPoint(0.5)}, {1.0, 0.0});
  EXPECT_NEAR(std::abs(evaluate(two, 0.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(evaluate(two, 0.5)), 0.0, 1e-15);
  const cplx z(0.1, -0.2);
  EXPECT_LT(std::abs(evaluate(two, z) - ((0.5 - z) / (1.0 - 0.5 * z)) / 0.5), 1e-15);

  std::mt19937_64 rng(47);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const PointSequence pts = testing::separated_sequence(rng, size(rng), 0.01, 0.9);
    std::vector<cplx> vals;
    for (std::size_t i = 0; i < pts.size(); ++i) vals.push_back(testing::random_value(rng));
    const auto f = lagrange_cluster_interpolant(pts, vals);
    for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_LT(std::abs(evaluate(f, pts[i].value()) - vals[i]), 1e-12);
  }
  EXPECT_THROW(lagrange_cluster_interpolant({DiskPoint(0.1), DiskPoint(0.1)}, {1.0, 2.0}), Error);
  EXPECT_THROW(lagrange_cluster_interpolant(PointSequence(17, DiskPoint(0.0)), std::vector<cplx>(17)), Error);
}

TEST(Lagrange, DerivativesMatchFiniteDifferences) {
  const auto f = lagrange_cluster_interpolant({DiskPoint(0.0), DiskPoint(0.3, 0.1), DiskPoint(-0.2, 0.4)},
                                              {1.0, cplx(0.0, 1.0), 2.0});
  const cplx z(0.05, -0.1);
  const double h = 1e-5;
  const cplx fd1 = (evaluate(f, z + h) - evaluate(f, z - h)) / (2.0 * h);
  const cplx fd2 = (evaluate(f, z + h) - 2.0 * evaluate(f, z) + evaluate(f, z - h)) / (h * h);
  EXPECT_LT(std::abs(evaluate(f, z, 1) - fd1), 1e-7);
  EXPECT_LT(std::abs(evaluate(f, z, 2) - fd2), 1e-3);
}

TEST(Blaschke, ExamplesAndRandomBound) {
  const BlaschkeBound single = blaschke_bound_check({DiskPoint(0.3)}, 0, 0.1);
  EXPECT_EQ(single.value, 1.0);
  EXPECT_EQ(single.bound, 2.0);
  const BlaschkeBound pair = blaschke_bound_check({DiskPoint(0.0), DiskPoint(0.5)}, 0, 0.0);
  EXPECT_EQ(pair.value, 1.0);
  EXPECT_LE(pair.value, pair.bound);

  std::mt19937_64 rng(53);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const cplx center = testing::random_point(rng, 0.9);
    PointSequence cluster;
    const std::size_t n = size(rng);
    while (cluster.size() < n) {
      const cplx c = moebius(center, testing::random_point(rng, 0.3));
      bool fresh = true;
      for (const auto& p : cluster) fresh = fresh && p.value() != c;
      if (fresh) cluster.emplace_back(c);
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const cplx z = moebius(center, testing::random_point(rng, 0.5));
    const BlaschkeBound b = blaschke_bound_check(cluster, pick(rng), z);
    violations += b.value > b.bound ? 1 : 0;
  }
  EXPECT_EQ(violations, 0);
}

TEST(WeightedNorms, ClosedForms) {
  const std::function<cplx(cplx)> one = [](cplx) { return cplx(1.0); };
  const std::function<cplx(cplx)> id = [](cplx z) { return z; };
  EXPECT_NEAR(weighted_norms(one, 2.0, 0.0), std::sqrt(kPi), 1e-12);
  EXPECT_NEAR(weighted_norms(one, 2.0, 1.0), std::sqrt(kPi / 2.0), 1e-12);
  EXPECT_NEAR(weighted_norms(id, 2.0, 0.0), std::sqrt(kPi / 2.0), 1e-12);
  const AnalyticFunctionRep poly = Polynomial{0.0, {0.0, 1.0}};
  EXPECT_NEAR(weighted_norms(poly, 2.0, 0.0), std::sqrt(kPi / 2.0), 1e-12);
  EXPECT_THROW(weighted_norms(one, 2.0, -1.0), Error);
}

TEST(WeightedNorms, DivergentIntegrandIsReported) {
  // |f|^2 ~ |1 - z|^-4 is not integrable against dA
  const std::function<cplx(cplx)> f = [](cplx z) { return 1.0 / ((1.0 - z) * (1.0 - z)); };
  try {
    weighted_norms(f, 2.0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::QuadratureDivergence);
  }
}

TEST(Reproducing, KernelInnerProductReturnsPointValue) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const DiskPoint w(testing::random_point(rng, 0.7));
    const InterpolationScheme s = build_minimal_scheme({w}, 0.1);
    const SolveReport rep = solve_p2(s, targets_from_values(s, {testing::random_value(rng)}));
    const BergmanKernel k;
    const cplx ip = area_inner_product([&](cplx z) { return evaluate(rep.function, z); },
                                       [&](cplx z) { return k(z, w.value()); }, 128, 256);
    EXPECT_LT(std::abs(ip - evaluate(rep.function, w.value())), 1e-9);
  }
}

}  // namespace
}  // namespace bergman
