// Randomized invariants over many seeded instances.

#include <gtest/gtest.h>

#include <cmath>

#include "admixtope/divergence.hpp"
#include "admixtope/geometry.hpp"
#include "admixtope/harness/suites.hpp"
#include "admixtope/marginal.hpp"
#include "admixtope/parallel.hpp"
#include "oracles.hpp"

using namespace admixtope;

namespace {

Polytope relabeled(const Polytope& g, Rng& rng) {
  auto pts = g.generators();
  for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[static_cast<std::size_t>(rng.uniform() * i)]);
  return extreme_points(pts, g.on_simplex());
}

}  // namespace

class RandomTriples : public ::testing::TestWithParam<int> {};

TEST_P(RandomTriples, MetricAxiomsAndMatchingDominatesHausdorff) {
  Rng rng(derive_seed(2024, {static_cast<std::uint64_t>(GetParam())}));
  for (int t = 0; t < 20; ++t) {
    const int d = 1 + static_cast<int>(rng.uniform() * 3);
    auto draw = [&] { return harness::random_polytope(rng, d, 1 + static_cast<int>(rng.uniform() * 5)); };
    const Polytope a = draw(), b = draw(), c = draw();
    for (auto metric : {&hausdorff, &min_matching}) {
      EXPECT_EQ(metric(a, b), metric(b, a));
      EXPECT_EQ(metric(a, a), 0.0);
      EXPECT_LE(metric(a, c), metric(a, b) + metric(b, c) + 1e-9);
    }
    EXPECT_LE(hausdorff(a, b), min_matching(a, b));
    const Polytope ra = relabeled(a, rng);
    EXPECT_EQ(hausdorff(ra, b), hausdorff(a, b));
    EXPECT_EQ(min_matching(ra, b), min_matching(a, b));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomTriples, ::testing::Range(0, 10));

TEST(Properties, CapChopIsSubsetOfInput) {
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    const Polytope g = harness::random_polytope(rng, 2, 3 + t % 3);
    if (g.affine_dim() != 2) continue;
    const FacetStructure fs = facet_structure(g);
    const std::size_t v = static_cast<std::size_t>(t) % g.num_extreme();
    double shortest = INFINITY;
    for (std::size_t u : fs.adjacency[v])
      shortest = std::min(shortest, (g.extreme_points()[u] - g.extreme_points()[v]).norm());
    const Polytope cut = eps_cap_chop(g, v, 0.5 * shortest);
    for (const auto& x : oracle::hull_samples(cut, 1000, rng)) EXPECT_TRUE(oracle::lp_contains(g, x, 1e-9));
  }
}

TEST(Properties, DivergenceBracketsOnExactInstances) {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const int k = 1 + t % 3, d = 1 + t % 2, n = 1 + t % 6;
    const AdmixtureModel a = harness::random_model(rng, k, d, 0.02, std::vector<double>(k, 0.5 + rng.uniform()));
    const AdmixtureModel b = harness::random_model(rng, k, d, 0.02, std::vector<double>(k, 0.5 + rng.uniform()));
    const ExactDivergences e = divergences_exact(a, b, n);
    ASSERT_FALSE(e.K.infinite);
    const double h = std::sqrt(e.h2);
    EXPECT_LE(e.h2, e.K.value / 2 + 1e-12);
    EXPECT_LE(e.h2, e.V + 1e-12);
    EXPECT_LE(e.V, std::sqrt(2.0) * h + 1e-12);
    EXPECT_GE(e.K2.value, e.K.value * e.K.value - 1e-12);
    EXPECT_NEAR(e.total_p, 1.0, 1e-9);
    EXPECT_NEAR(e.total_q, 1.0, 1e-9);
  }
}

TEST(Properties, ZeroDivergenceExactlyWhenMarginalsCoincide) {
  // Relabeling topics under a symmetric law leaves the marginal unchanged.
  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    const AdmixtureModel a = harness::random_model(rng, 3, 2, 0.02, {1.2, 1.2, 1.2});
    Eigen::MatrixXd th = a.theta();
    th.row(0).swap(th.row(1));
    const AdmixtureModel b(th, a.mixing(), a.c0());
    const OutcomeTable pa = outcome_table(a, 4), pb = outcome_table(b, 4);
    double gap = 0.0;
    for (std::size_t i = 0; i < pa.logp.size(); ++i) gap = std::max(gap, std::abs(pa.logp[i] - pb.logp[i]));
    const ExactDivergences e = divergences_exact(a, b, 4);
    EXPECT_LT(gap, 1e-12);
    EXPECT_NEAR(e.V, 0.0, 1e-12);
    EXPECT_NEAR(e.K.value, 0.0, 1e-12);
    const AdmixtureModel c = harness::perturbed_model(a, rng, 0.05);
    EXPECT_GT(divergences_exact(a, c, 4).K.value, 0.0);
  }
}

TEST(Properties, SampledEtaInsideHull) {
  Rng rng(10);
  for (int t = 0; t < 5; ++t) {
    const int k = 2 + t;
    const AdmixtureModel m = harness::random_model(rng, k, 3, 0.02, std::vector<double>(k, 0.3 + t * 0.4));
    for (int s = 0; s < 2000; ++s) ASSERT_TRUE(oracle::lp_contains(m.polytope(), sample_eta(m, rng), 1e-9));
  }
}

TEST(Properties, ParallelMapAndSumIgnoreThreadCount) {
  auto f = [](std::size_t i) { return std::sin(static_cast<double>(i)) * 1e-3 + 1.0 / (1.0 + i); };
  const double one = deterministic_sum(10'000, 1, f);
  for (int threads : {2, 3, 8}) {
    EXPECT_EQ(deterministic_sum(10'000, threads, f), one);
    EXPECT_EQ(parallel_map(100, threads, f), parallel_map(100, 1, f));
  }
  EXPECT_THROW(parallel_map(10, 4, [](std::size_t i) -> int {
                 if (i == 7) throw InvalidArgument("boom");
                 return 1;
               }),
               InvalidArgument);
}

TEST(Properties, DerivedSeedsAreStable) {
  EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
  EXPECT_NE(derive_seed(1, {2}), derive_seed(2, {2}));
}
