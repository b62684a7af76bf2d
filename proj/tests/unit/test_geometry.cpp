#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "admixtope/geometry.hpp"
#include "admixtope/lp.hpp"
#include "admixtope/min_norm.hpp"
#include "admixtope/harness/suites.hpp"
#include "oracles.hpp"

using namespace admixtope;

namespace {

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p(i++) = x;
  return p;
}

Polytope equilateral(double side) {
  const double h = side * std::sqrt(3.0) / 2.0;
  return extreme_points({pt({0, 0}), pt({side, 0}), pt({side / 2, h})});
}

std::size_t extreme_position(const Polytope& g, const Point& v) {
  const auto pts = g.extreme_points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if ((pts[i] - v).norm() < 1e-12) return i;
  ADD_FAILURE() << "vertex not found";
  return 0;
}

}  // namespace

TEST(ExtremePoints, DropsCollinearMidpoint) {
  const Polytope g = extreme_points({pt({0, 1}), pt({1, 0}), pt({0.5, 0.5})}, true);
  EXPECT_EQ(g.num_extreme(), 2u);
  EXPECT_EQ(g.affine_dim(), 1);
  EXPECT_EQ(g.extreme_indices(), (std::vector<std::size_t>{0, 1}));
}

TEST(ExtremePoints, RepeatedPointIsSingleVertex) {
  const Polytope g = extreme_points({pt({0.3, 0.7}), pt({0.3, 0.7}), pt({0.3, 0.7})}, true);
  EXPECT_EQ(g.num_extreme(), 1u);
  EXPECT_EQ(g.affine_dim(), 0);
}

TEST(ExtremePoints, RejectsBadInput) {
  EXPECT_THROW(extreme_points({}), InvalidArgument);
  EXPECT_THROW(extreme_points({pt({0.5, 0.6})}, true), InvalidArgument);
  EXPECT_THROW(extreme_points({pt({0.5, 0.5}), pt({0.2, 0.3, 0.5})}), InvalidArgument);
  EXPECT_THROW(extreme_points({pt({NAN, 1.0})}), InvalidArgument);
}

TEST(ExtremePoints, MatchesLpMembershipOnRandomClouds) {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Point> points;
    for (int i = 0; i < 50; ++i) {
      const auto w = rng.dirichlet(std::vector<double>{1, 1, 1});
      points.push_back(pt({w[0], w[1], w[2]}));
    }
    const Polytope g = extreme_points(points, true);
    const auto& extr = g.extreme_indices();
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::vector<Point> others;
      for (std::size_t j = 0; j < points.size(); ++j)
        if (j != i) others.push_back(points[j]);
      const bool inside_others = oracle::lp_contains(extreme_points(others, true), points[i], 1e-9);
      const bool is_extreme = std::find(extr.begin(), extr.end(), i) != extr.end();
      EXPECT_EQ(is_extreme, !inside_others) << "point " << i;
    }
  }
}

TEST(DistPointPolytope, VertexAndEndpointCases) {
  const Polytope g = extreme_points({pt({0.2, 0.8}), pt({0.8, 0.2})}, true);
  EXPECT_NEAR(dist_point_polytope(pt({0.2, 0.8}), g), 0.0, 1e-12);
  EXPECT_NEAR(dist_point_polytope(pt({1, 0}), g), std::sqrt(0.08), 1e-10);
}

TEST(DistPointPolytope, AgreesWithDenseSampling) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Polytope g = harness::random_polytope(rng, 2, 2 + trial % 4);
    const auto w = rng.dirichlet(std::vector<double>{1, 1, 1});
    const Point x = pt({w[0], w[1], w[2]});
    const auto boundary = oracle::segment_samples(g, 20000 / static_cast<int>(g.num_extreme() * g.num_extreme()) + 2);
    const double ours = dist_point_polytope(x, g);
    const double dense = oracle::dense_distance(x, g, boundary);
    EXPECT_NEAR(ours, dense, 1e-3);
    EXPECT_LE(ours, dense + 1e-12);
  }
}

TEST(Hausdorff, IdentityAndSegmentToPoint) {
  const Polytope g = extreme_points({pt({0.2, 0.8}), pt({0.8, 0.2})}, true);
  EXPECT_EQ(hausdorff(g, g), 0.0);
  const Polytope p = extreme_points({pt({0.5, 0.5})}, true);
  EXPECT_NEAR(hausdorff(g, p), std::sqrt(0.18), 1e-10);
}

TEST(Hausdorff, AgreesWithDenseSampling) {
  Rng rng(13);
  for (int trial = 0; trial < 15; ++trial) {
    const Polytope a = harness::random_polytope(rng, 2, 1 + trial % 5);
    const Polytope b = harness::random_polytope(rng, 2, 1 + (trial + 2) % 5);
    EXPECT_NEAR(hausdorff(a, b), oracle::dense_hausdorff(a, b, 400), 1e-3);
  }
}

TEST(MinMatching, PermutationAndSingleDisplacement) {
  const Polytope a = extreme_points({pt({0.8, 0.1, 0.1}), pt({0.1, 0.8, 0.1}), pt({0.1, 0.1, 0.8})}, true);
  const Polytope b = extreme_points({pt({0.1, 0.1, 0.8}), pt({0.8, 0.1, 0.1}), pt({0.1, 0.8, 0.1})}, true);
  EXPECT_EQ(min_matching(a, b), 0.0);
  const Point shift = 0.05 * pt({1, -1, 0}).normalized();
  const Polytope c = displace_vertex(a, 0, shift);
  EXPECT_NEAR(min_matching(a, c), 0.05, 1e-12);
}

TEST(MinMatching, EqualsBruteForce) {
  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 3;
    const Polytope a = harness::random_polytope(rng, d, 1 + trial % 5);
    const Polytope b = harness::random_polytope(rng, d, 1 + (trial / 5) % 5);
    EXPECT_NEAR(min_matching(a, b), oracle::brute_force_min_matching(a, b), 1e-12);
  }
}

TEST(SymDiffVolume, IdentityAndCornerCap) {
  const Polytope g = extreme_points({pt({0, 0}), pt({1, 0}), pt({0, 1})});
  EXPECT_NEAR(sym_diff_volume(g, g, VolumeMethod::Exact2d).value, 0.0, 1e-15);
  const Polytope cut = eps_cap_chop(g, extreme_position(g, pt({0, 0})), 0.1);
  EXPECT_NEAR(sym_diff_volume(g, cut, VolumeMethod::Exact2d).value, 0.005, 1e-12);
}

TEST(SymDiffVolume, ExactAgreesWithMonteCarlo) {
  Rng rng(15);
  for (int trial = 0; trial < 8; ++trial) {
    const Polytope a = harness::random_polytope(rng, 2, 3 + trial % 3);
    const Polytope b = harness::random_polytope(rng, 2, 3 + (trial + 1) % 3);
    const auto exact = sym_diff_volume(a, b, VolumeMethod::Exact2d);
    const auto mc = sym_diff_volume(a, b, VolumeMethod::MonteCarlo, 1'000'000, 100 + trial);
    EXPECT_NEAR(exact.value, mc.value, 3.0 * mc.std_error + 1e-12);
  }
}

TEST(SymDiffVolume, RejectsDifferentSpans) {
  const Polytope tri = harness::reference_triangle();
  const Polytope seg = extreme_points({pt({0.5, 0.5, 0.0}), pt({0.0, 0.5, 0.5})}, true);
  EXPECT_THROW(sym_diff_volume(tri, seg, VolumeMethod::MonteCarlo), InvalidArgument);
  EXPECT_THROW(sym_diff_volume(seg, seg, VolumeMethod::Exact2d), Unsupported);
}

TEST(CheckA1, EquilateralTriangleAndSegment) {
  const double s = 0.7;
  const ThicknessReport tri = check_A1(equilateral(s));
  EXPECT_NEAR(tri.r_in, s / (2 * std::sqrt(3.0)), 1e-6);
  EXPECT_NEAR(tri.R_out, s / std::sqrt(3.0), 1e-6);
  const ThicknessReport seg = check_A1(extreme_points({pt({0.1, 0.9}), pt({0.7, 0.3})}, true));
  const double L = std::sqrt(0.72);
  EXPECT_NEAR(seg.r_in, L / 2, 1e-6);
  EXPECT_NEAR(seg.R_out, L / 2, 1e-6);
}

TEST(CheckA1, BallInsideAndVerticesWithin) {
  Rng rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    const Polytope g = harness::random_polytope(rng, 2 + trial % 2, 4 + trial % 2);
    const ThicknessReport r = check_A1(g);
    const int p = g.affine_dim();
    for (int s = 0; s < 200; ++s) {
      Eigen::VectorXd u(p);
      for (int i = 0; i < p; ++i) u(i) = rng.normal();
      const Point x = r.center + g.frame().basis * (u.normalized() * r.r_in * (1 - 1e-6));
      EXPECT_TRUE(oracle::lp_contains(g, x, 1e-9));
    }
    for (const auto& v : g.extreme_points()) EXPECT_LE((v - r.center).norm(), r.R_out * (1 + 1e-6));
    EXPECT_LE(r.meb_radius, r.R_out + 1e-9);
  }
}

TEST(CheckA2, TriangleAndSquare) {
  for (double d : check_A2(equilateral(0.5)).delta) EXPECT_NEAR(d, std::numbers::pi / 3, 1e-9);
  const Polytope sq = extreme_points({pt({0, 0}), pt({0.5, 0}), pt({0.5, 0.5}), pt({0, 0.5})});
  for (double d : check_A2(sq).delta) EXPECT_NEAR(d, std::numbers::pi / 4, 1e-9);
}

TEST(CheckA2, MatchesEdgeAngleOracle) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Polytope g = harness::random_polytope(rng, 2, 3 + trial % 4);
    if (g.affine_dim() != 2) continue;
    const CornerReport r = check_A2(g);
    const auto expected = oracle::polygon_corner_deltas(g);
    ASSERT_EQ(r.delta.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(r.delta[i], expected[i], 1e-9);
    EXPECT_NEAR(r.delta_min, *std::min_element(expected.begin(), expected.end()), 1e-9);
  }
}

TEST(CheckA2, LimitsAndDegenerateInput) {
  EXPECT_THROW(check_A2(extreme_points({pt({0.5, 0.5})}, true)), InvalidArgument);
  std::vector<Point> simplex;
  for (int i = 0; i < 5; ++i) {
    Point e = Point::Constant(5, 0.05);
    e(i) = 0.8;
    simplex.push_back(e);
  }
  EXPECT_THROW(check_A2(extreme_points(simplex, true)), Unsupported);
}

TEST(PackingNumber, SmallCases) {
  const std::vector<Polytope> one{harness::reference_triangle()};
  EXPECT_EQ(packing_number(one, 0.1).packing, 1u);
  const std::vector<Polytope> two{extreme_points({pt({0.0, 0.0})}), extreme_points({pt({0.3, 0.0})})};
  EXPECT_EQ(packing_number(two, 0.5).packing, 1u);
  EXPECT_EQ(packing_number(two, 0.2).packing, 2u);
}

TEST(PackingNumber, BracketedByExhaustivePacking) {
  Rng rng(18);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Polytope> cands;
    for (int i = 0; i < 12; ++i) cands.push_back(harness::random_polytope(rng, 2, 1 + i % 3));
    const Eigen::MatrixXd h = hausdorff_matrix(cands);
    std::vector<std::vector<double>> dist(12, std::vector<double>(12));
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j) dist[i][j] = h(i, j);
    const double eps = 0.1 + 0.05 * trial;
    const PackingResult r = packing_number(cands, eps);
    // A maximal eps-packing is an eps-cover, so it is at least the largest
    // 2 eps-packing, and it never exceeds the largest eps-packing.
    EXPECT_LE(r.packing, oracle::exhaustive_packing(dist, eps));
    EXPECT_GE(r.packing, oracle::exhaustive_packing(dist, 2 * eps));
    EXPECT_LE(r.covering, r.packing);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      double nearest = 1e9;
      for (std::size_t c : r.covering_centers) nearest = std::min(nearest, h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)));
      EXPECT_LT(nearest, eps);
    }
  }
}

TEST(EpsCapChop, TriangleGainsOneVertex) {
  const Polytope tri = harness::reference_triangle();
  for (std::size_t v = 0; v < 3; ++v) EXPECT_EQ(eps_cap_chop(tri, v, 0.1).num_extreme(), 4u);
}

TEST(EpsCapChop, RejectsEdgeLengthEps) {
  const Polytope tri = harness::reference_triangle();
  const double edge = (tri.extreme_points()[0] - tri.extreme_points()[1]).norm();
  EXPECT_THROW(eps_cap_chop(tri, 0, edge), InvalidArgument);
  EXPECT_THROW(eps_cap_chop(tri, 0, 0.0), InvalidArgument);
}

TEST(EpsCapChop, HausdorffWithinCapBracket) {
  const Polytope tri = harness::reference_triangle();
  for (double eps : {0.02, 0.05, 0.1}) {
    const Polytope cut = eps_cap_chop(tri, 1, eps);
    const double dense = oracle::dense_hausdorff(tri, cut, 2000);
    // The cap height is eps cos(30 deg) for a 60 degree corner.
    EXPECT_NEAR(dense, eps * std::sqrt(3.0) / 2, 1e-3);
    EXPECT_LE(hausdorff(tri, cut), eps + 1e-12);
    EXPECT_GE(hausdorff(tri, cut), 0.5 * eps);
  }
}

TEST(EpsCapChop, OutputIsSubsetOfInput) {
  Rng rng(19);
  const Polytope tri = harness::reference_triangle();
  const Polytope cut = eps_cap_chop(tri, 2, 0.1);
  for (const auto& x : oracle::hull_samples(cut, 1000, rng)) EXPECT_TRUE(oracle::lp_contains(tri, x, 1e-9));
}

TEST(HomothetyEnlarge, IdentityVolumeLawAndContainment) {
  const Polytope tri = harness::reference_triangle();
  const Polytope same = homothety_enlarge(tri, 0.0);
  EXPECT_EQ(hausdorff(tri, same), 0.0);

  const Polytope unit = equilateral(std::sqrt(3.0));  // circumradius 1
  const double eps = 0.05;
  const Polytope big = homothety_enlarge(unit, eps);
  const double f = homothety_factor(unit, eps);
  EXPECT_NEAR(f, 1 + eps / check_A1(unit).r_in, 1e-12);
  EXPECT_NEAR(volume(big) / volume(unit), f * f, 1e-9);
  // Boundary points pushed out by eps along the outward normals stay inside.
  const FacetStructure fs = facet_structure(unit);
  for (const auto& x : oracle::segment_samples(unit, 50)) {
    const Eigen::VectorXd y = unit.frame().to_local(x);
    for (const auto& facet : fs.facets) {
      if (std::abs(facet.normal.dot(y) - facet.offset) > 1e-9) continue;
      const Point out = unit.frame().to_ambient(y + eps * facet.normal);
      EXPECT_TRUE(oracle::lp_contains(big, out, 1e-9));
    }
  }
  EXPECT_THROW(homothety_enlarge(tri, -0.1), InvalidArgument);
}

TEST(MinimaxPair, SimplexCaseVertexCounts) {
  const MinimaxPair p = minimax_pair(4, 2, 0.05);
  EXPECT_EQ(p.q, 2);
  EXPECT_TRUE(p.simplex_case);
  EXPECT_EQ(p.base.num_extreme(), 3u);
  EXPECT_EQ(p.chopped.num_extreme(), 4u);
  EXPECT_LE(p.chopped.num_extreme(), 4u);
}

TEST(MinimaxPair, PolytopeCaseStaysWithinK) {
  const MinimaxPair p = minimax_pair(6, 2, 0.01);
  EXPECT_FALSE(p.simplex_case);
  EXPECT_EQ(p.q, 2);
  EXPECT_LE(p.base.num_extreme(), 6u);
  EXPECT_LE(p.chopped.num_extreme(), 6u);
  EXPECT_GT(hausdorff(p.base, p.chopped), 0.0);
  EXPECT_THROW(minimax_pair(1, 2, 0.01), InvalidArgument);
  EXPECT_THROW(minimax_pair(4, 2, 10.0), InvalidArgument);
}

TEST(Lp, SmallProgram) {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6.
  Eigen::MatrixXd A(2, 2);
  A << 1, 2, 3, 1;
  const auto sol = lp::maximize(A, Eigen::Vector2d(4, 6), Eigen::Vector2d(1, 1));
  ASSERT_EQ(sol.status, lp::Status::Optimal);
  EXPECT_NEAR(sol.objective, 2.8, 1e-12);
  Eigen::MatrixXd B(1, 1);
  B << -1;
  EXPECT_EQ(lp::maximize(B, Eigen::VectorXd::Constant(1, -1), Eigen::VectorXd::Zero(1)).status, lp::Status::Optimal);
  EXPECT_EQ(lp::maximize(B, Eigen::VectorXd::Constant(1, 0), Eigen::VectorXd::Ones(1)).status, lp::Status::Unbounded);
  Eigen::MatrixXd C(1, 1);
  C << 1;
  EXPECT_EQ(lp::maximize(C, Eigen::VectorXd::Constant(1, -1), Eigen::VectorXd::Zero(1)).status, lp::Status::Infeasible);
}

TEST(MinNorm, NearestPointOfSegment) {
  Eigen::MatrixXd P(2, 2);
  P << 1, 1, -1, 1;
  const NearestPoint np = min_norm_point(P);
  EXPECT_NEAR(np.point(0), 1.0, 1e-12);
  EXPECT_NEAR(np.point(1), 0.0, 1e-12);
  EXPECT_NEAR(np.distance, 1.0, 1e-12);
  EXPECT_NEAR(np.weights.sum(), 1.0, 1e-12);
}
