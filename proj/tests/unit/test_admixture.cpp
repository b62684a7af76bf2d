#include <gtest/gtest.h>

#include <cmath>

#include "admixtope/admixture.hpp"
#include "admixtope/harness/suites.hpp"
#include "admixtope/marginal.hpp"
#include "admixtope/prior.hpp"
#include "admixtope/stats.hpp"
#include "oracles.hpp"

using namespace admixtope;

namespace {

AdmixtureModel two_topic(double c0 = 0.0) {
  Eigen::MatrixXd th(2, 2);
  th << 0.8, 0.2, 0.2, 0.8;
  return AdmixtureModel(th, MixingLaw::symmetric_law(2), c0);
}

AdmixtureModel point_model(const Point& x) {
  return AdmixtureModel(x.transpose(), MixingLaw::symmetric_law(1), 0.0);
}

}  // namespace

TEST(MixingLaw, Validation) {
  EXPECT_THROW(MixingLaw(std::vector<double>{}), InvalidArgument);
  EXPECT_THROW(MixingLaw(std::vector<double>{1.0, 0.0}), InvalidArgument);
  EXPECT_THROW(MixingLaw(std::vector<double>(11, 1.0)), InvalidArgument);
  EXPECT_TRUE(MixingLaw::symmetric_law(3, 2.0).symmetric());
  EXPECT_FALSE(MixingLaw(std::vector<double>{1.0, 2.0}).symmetric());
  EXPECT_DOUBLE_EQ(MixingLaw(std::vector<double>{1.0, 2.5}).total(), 3.5);
}

TEST(AdmixtureModel, Validation) {
  Eigen::MatrixXd off(1, 2);
  off << 0.5, 0.6;
  EXPECT_THROW(AdmixtureModel(off, MixingLaw::symmetric_law(1), 0.0), InvalidArgument);
  Eigen::MatrixXd low(1, 2);
  low << 0.01, 0.99;
  EXPECT_THROW(AdmixtureModel(low, MixingLaw::symmetric_law(1), 0.02), InvalidArgument);
  EXPECT_THROW(two_topic(0.5), InvalidArgument);
  Eigen::MatrixXd th(2, 2);
  th << 0.8, 0.2, 0.2, 0.8;
  EXPECT_THROW(AdmixtureModel(th, MixingLaw::symmetric_law(3), 0.0), InvalidArgument);
  EXPECT_EQ(two_topic().polytope().num_extreme(), 2u);
}

TEST(SampleBeta, SingleTopicAndMeans) {
  Rng rng(1);
  EXPECT_EQ(sample_beta(MixingLaw::symmetric_law(1), rng), std::vector<double>{1.0});
  for (const auto& gamma : {std::vector<double>{1, 1, 1, 1}, std::vector<double>{0.5, 2.0, 3.5}}) {
    const MixingLaw law(gamma);
    const double total = law.total();
    const int N = 100'000;
    std::vector<std::vector<double>> draws(gamma.size());
    for (int s = 0; s < N; ++s) {
      const auto b = sample_beta(law, rng);
      for (std::size_t j = 0; j < b.size(); ++j) draws[j].push_back(b[j]);
    }
    for (std::size_t j = 0; j < gamma.size(); ++j) {
      const double target = gamma[j] / total;
      const double se = std::sqrt(target * (1 - target) / (total + 1) / N);
      EXPECT_NEAR(mean(draws[j]), target, 3 * se);
    }
  }
}

TEST(SampleEta, SingleTopicAndSymmetricMean) {
  Rng rng(2);
  const AdmixtureModel one = point_model(Point::Constant(3, 1.0 / 3.0));
  EXPECT_EQ(sample_eta(one, rng), one.row(0));
  const int N = 100'000;
  std::vector<double> first;
  for (int s = 0; s < N; ++s) first.push_back(sample_eta(two_topic(), rng)(0));
  // eta_0 = 0.2 + 0.6 u with u uniform: sd = 0.6 / sqrt(12).
  EXPECT_NEAR(mean(first), 0.5, 3 * 0.6 / std::sqrt(12.0 * N));
}

TEST(SampleEta, DrawsStayInHull) {
  Rng rng(3);
  const AdmixtureModel m = harness::random_model(rng, 4, 2, 0.02, {1, 1, 1, 1});
  for (int s = 0; s < 10'000; ++s) ASSERT_TRUE(oracle::lp_contains(m.polytope(), sample_eta(m, rng), 1e-9));
}

TEST(SampleDataset, DegeneratePointEmitsOneSymbol) {
  Rng rng(4);
  const Dataset x = sample_dataset(point_model(Point::Unit(3, 0)), 5, 7, rng);
  for (auto s : x.symbols()) EXPECT_EQ(s, 0);
}

TEST(SampleDataset, DeterministicUnderSeed) {
  const AdmixtureModel m = two_topic();
  Rng a(99), b(99);
  EXPECT_EQ(sample_dataset(m, 10, 20, a).symbols(), sample_dataset(m, 10, 20, b).symbols());
}

TEST(SampleDataset, HoeffdingEnvelopeHolds) {
  Rng rng(5);
  Eigen::MatrixXd th(3, 3);
  th << 0.6, 0.2, 0.2, 0.2, 0.6, 0.2, 0.2, 0.2, 0.6;
  const AdmixtureModel m(th, MixingLaw::symmetric_law(3), 0.0);
  const int n = 100;
  const double eps = 0.2;
  int exceed = 0;
  const int reps = 100'000;
  for (int r = 0; r < reps; ++r) {
    const Point eta = sample_eta(m, rng);
    std::vector<std::uint8_t> row(n);
    std::vector<double> w(eta.data(), eta.data() + eta.size());
    for (auto& s : row) s = static_cast<std::uint8_t>(rng.categorical(w));
    if ((empirical_freq(row, 2).eta_hat - eta).norm() >= eps) ++exceed;
  }
  EXPECT_LE(static_cast<double>(exceed) / reps, hoeffding_envelope(n, 2, eps));
}

TEST(EmpiricalFreq, Examples) {
  const std::vector<std::uint8_t> row{0, 1, 0, 2};
  const EmpiricalFreq f = empirical_freq(row, 2);
  EXPECT_EQ(f.counts, (std::vector<int>{2, 1, 1}));
  EXPECT_DOUBLE_EQ(f.eta_hat(0), 0.5);
  EXPECT_DOUBLE_EQ(f.eta_hat(1), 0.25);
  EXPECT_DOUBLE_EQ(f.eta_hat(2), 0.25);
  const std::vector<std::uint8_t> same(5, 1);
  EXPECT_EQ(empirical_freq(same, 2).eta_hat, Point::Unit(3, 1));
  EXPECT_THROW(empirical_freq(std::vector<std::uint8_t>{}, 2), InvalidArgument);
  EXPECT_THROW(empirical_freq(std::vector<std::uint8_t>{3}, 2), InvalidArgument);
}

TEST(EmpiricalFreq, RandomRowsMatchRecount) {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::uint8_t> row(1 + t);
    for (auto& s : row) s = static_cast<std::uint8_t>(rng.uniform() * 4);
    const EmpiricalFreq f = empirical_freq(row, 3);
    EXPECT_DOUBLE_EQ(f.eta_hat.sum(), 1.0);
    for (int l = 0; l <= 3; ++l)
      EXPECT_EQ(f.counts[l], std::count(row.begin(), row.end(), static_cast<std::uint8_t>(l)));
  }
}

TEST(MarginalLoglik, ClosedForms) {
  const AdmixtureModel half = point_model(Point::Constant(2, 0.5));
  const std::vector<std::uint8_t> r3{0, 1, 1};
  for (auto method : {MarginalMethod::ExactQuadrature, MarginalMethod::ExactMoment})
    EXPECT_NEAR(std::exp(marginal_loglik(half, r3, method).logp), 0.125, 1e-12);
  const std::vector<std::uint8_t> r00{0, 0};
  const std::vector<std::uint8_t> r0{0};
  for (auto method : {MarginalMethod::ExactQuadrature, MarginalMethod::ExactMoment}) {
    EXPECT_NEAR(std::exp(marginal_loglik(two_topic(), r00, method).logp), 0.28, 1e-10);
    EXPECT_NEAR(std::exp(marginal_loglik(two_topic(), r0, method).logp), 0.5, 1e-12);
  }
}

TEST(MarginalLoglik, ZeroProbabilityRow) {
  const AdmixtureModel unit = point_model(Point::Unit(2, 0));
  const std::vector<std::uint8_t> row{0, 1};
  EXPECT_EQ(marginal_loglik(unit, row, MarginalMethod::ExactMoment).logp, -INFINITY);
}

TEST(MarginalLoglik, QuadratureMatchesMomentForThreeTopics) {
  Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    const AdmixtureModel m = harness::random_model(rng, 3, 2, 0.02, {0.7, 1.3, 2.0});
    std::vector<std::uint8_t> row(6);
    for (auto& s : row) s = static_cast<std::uint8_t>(rng.uniform() * 3);
    EXPECT_NEAR(marginal_loglik(m, row, MarginalMethod::ExactQuadrature).logp,
                marginal_loglik(m, row, MarginalMethod::ExactMoment).logp, 1e-7);
  }
}

TEST(MarginalLoglik, QuadratureRejectsLargeK) {
  Rng rng(8);
  const AdmixtureModel m = harness::random_model(rng, 4, 2, 0.02, {1, 1, 1, 1});
  const std::vector<std::uint8_t> row{0, 1};
  EXPECT_THROW(marginal_loglik(m, row, MarginalMethod::ExactQuadrature), Unsupported);
  EXPECT_NO_THROW(marginal_loglik(m, row, MarginalMethod::ExactMoment));
}

TEST(MarginalLoglik, MonteCarloWithinThreeStderr) {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const int k = 1 + t % 4;
    const AdmixtureModel m = harness::random_model(rng, k, 1 + t % 3, 0.02, std::vector<double>(k, 1.0));
    std::vector<std::uint8_t> row(1 + t % 8);
    for (auto& s : row) s = static_cast<std::uint8_t>(rng.uniform() * (m.d() + 1));
    const double exact = marginal_loglik(m, row, MarginalMethod::ExactMoment).logp;
    MarginalBudget budget;
    budget.samples = 1'000'000;
    budget.seed = 1000 + t;
    const MarginalResult mc = marginal_loglik(m, row, MarginalMethod::MonteCarlo, budget);
    EXPECT_NEAR(mc.logp, exact, 3 * mc.std_error + 1e-12) << "trial " << t;
  }
}

TEST(MarginalLoglik, InvariantUnderRowPermutation) {
  Rng rng(10);
  const AdmixtureModel m = harness::random_model(rng, 3, 2, 0.02, {1.5, 1.5, 1.5});
  Eigen::MatrixXd swapped = m.theta();
  swapped.row(0).swap(swapped.row(2));
  const AdmixtureModel p(swapped, m.mixing(), m.c0());
  const std::vector<std::uint8_t> row{0, 2, 2, 1, 0};
  for (auto method : {MarginalMethod::ExactQuadrature, MarginalMethod::ExactMoment})
    EXPECT_NEAR(marginal_loglik(m, row, method).logp, marginal_loglik(p, row, method).logp, 1e-8);
}

TEST(RegularityProbe, CentroidExponentNearKMinusOne) {
  Eigen::MatrixXd th(3, 3);
  th << 0.8, 0.1, 0.1, 0.1, 0.8, 0.1, 0.1, 0.1, 0.8;
  const AdmixtureModel m(th, MixingLaw::symmetric_law(3), 0.0);
  const std::vector<double> eps{0.02, 0.04, 0.08, 0.12, 0.2};
  const RegularityProbe probe = regularity_probe(m, Point::Constant(3, 1.0 / 3.0), eps, 1'000'000, 21);
  EXPECT_NEAR(probe.exponent, 2.0, 0.3);
}

TEST(RegularityProbe, SingleTopicAndVertexAnchor) {
  const AdmixtureModel one = point_model(Point::Constant(2, 0.5));
  const std::vector<double> eps{0.01, 0.1};
  for (const auto& p : regularity_probe(one, one.row(0), eps, 1000, 1).points) EXPECT_EQ(p.prob, 1.0);
  Eigen::MatrixXd th(3, 3);
  th << 0.8, 0.1, 0.1, 0.1, 0.8, 0.1, 0.1, 0.1, 0.8;
  const AdmixtureModel m(th, MixingLaw::symmetric_law(3), 0.0);
  const std::vector<double> sweep{0.02, 0.05, 0.1, 0.2};
  const RegularityProbe probe = regularity_probe(m, m.row(0), sweep, 1'000'000, 22);
  for (std::size_t i = 0; i < probe.points.size(); ++i) {
    EXPECT_GT(probe.points[i].prob, 0.0);
    if (i > 0) EXPECT_GE(probe.points[i].prob, probe.points[i - 1].prob);
  }
}

TEST(PriorDraw, UniformRowMeansAndFloor) {
  Rng rng(23);
  PriorSpec flat;
  flat.k = 1;
  flat.d = 2;
  flat.c0 = 0.0;
  flat.gamma = {1.0};
  const int N = 100'000;
  std::vector<double> first;
  for (int s = 0; s < N; ++s) first.push_back(prior_draw(flat, rng).theta()(0, 0));
  // Dirichlet(1,1,1) marginal variance: (1/3)(2/3)/4.
  EXPECT_NEAR(mean(first), 1.0 / 3, 3 * std::sqrt(2.0 / 36 / N));
  PriorSpec floored = flat;
  floored.k = 3;
  floored.gamma = {1, 1, 1};
  floored.c0 = 0.2;
  for (int s = 0; s < 1000; ++s) EXPECT_GT(prior_draw(floored, rng).theta().minCoeff(), 0.2);
}

TEST(PriorSpec, Validation) {
  PriorSpec p;
  p.k = 2;
  p.d = 1;
  p.gamma = {1.0};
  EXPECT_THROW(p.validate(), InvalidArgument);
  p.gamma = {1.0, 1.0};
  EXPECT_NO_THROW(p.validate());
  p.c0 = 0.5;
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(TruncatedDirichlet, GibbsKernelMatchesRejection) {
  // Moderate truncation: rejection is cheap, so it serves as the reference.
  const std::vector<double> alpha{2.0, 5.0, 9.0};
  const double c0 = 0.1;
  Rng rng(24);
  const int N = 40'000;
  std::vector<std::vector<double>> rej(3), gib(3);
  std::vector<double> x{0.3, 0.3, 0.4};
  for (int s = 0; s < N; ++s) {
    std::vector<double> r;
    do r = rng.dirichlet(alpha);
    while (*std::min_element(r.begin(), r.end()) <= c0);
    x = truncated_dirichlet_gibbs(alpha, c0, x, 1, rng);
    for (int i = 0; i < 3; ++i) {
      rej[i].push_back(r[i]);
      gib[i].push_back(x[i]);
    }
  }
  for (int i = 0; i < 3; ++i) {
    // Chain draws are autocorrelated; allow a generous multiple of the iid error.
    const double se = std::sqrt(variance(rej[i]) / N);
    EXPECT_NEAR(mean(gib[i]), mean(rej[i]), 10 * se);
    EXPECT_GT(*std::min_element(gib[i].begin(), gib[i].end()), c0);
  }
}

TEST(TruncatedDirichlet, DeepTailStaysFeasible) {
  // The untruncated law puts essentially no mass above the floor in entry 2.
  const std::vector<double> alpha{600.0, 300.0, 1.0};
  Rng rng(25);
  for (int s = 0; s < 200; ++s) {
    const auto row = truncated_dirichlet(alpha, 0.02, rng);
    EXPECT_GT(*std::min_element(row.begin(), row.end()), 0.02);
    EXPECT_NEAR(row[0] + row[1] + row[2], 1.0, 1e-12);
    // Conditioned on x_2 > 0.02, the remaining mass splits roughly 2:1.
    EXPECT_NEAR(row[0] / (row[0] + row[1]), 2.0 / 3.0, 0.1);
    EXPECT_LT(row[2], 0.05);
  }
  EXPECT_THROW(truncated_dirichlet(alpha, 0.4, rng), InvalidArgument);
}
