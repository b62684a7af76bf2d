#include "admixtope/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "admixtope/error.hpp"
#include "admixtope/shape.hpp"

namespace admixtope {

Polytope eps_cap_chop(const Polytope& g, std::size_t vertex, double eps) {
  require(vertex < g.num_extreme(), "eps_cap_chop: vertex position out of range");
  require(g.affine_dim() >= 1, "eps_cap_chop: polytope is a single point");
  require(eps > 0.0, "eps_cap_chop: eps must be positive");
  const FacetStructure fs = facet_structure(g);
  const auto ext = g.extreme_points();
  const Point& v = ext[vertex];
  double shortest = std::numeric_limits<double>::infinity();
  for (std::size_t u : fs.adjacency[vertex]) shortest = std::min(shortest, (ext[u] - v).norm());
  require(eps < shortest, "eps_cap_chop: eps reaches an adjacent vertex (shortest adjacent edge " +
                              std::to_string(shortest) + ")");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < ext.size(); ++i)
    if (i != vertex) pts.push_back(ext[i]);
  for (std::size_t u : fs.adjacency[vertex]) {
    const Point dir = (ext[u] - v) / (ext[u] - v).norm();
    pts.push_back(v + eps * dir);
  }
  return extreme_points(std::move(pts), g.on_simplex());
}

double homothety_factor(const Polytope& g, double eps) {
  require(eps >= 0.0, "homothety_enlarge: eps must be nonnegative");
  const ThicknessReport t = check_A1(g);
  require(t.r_in > kGeomTol, "homothety_enlarge: polytope has an empty relative interior");
  return 1.0 + eps / t.r_in;
}

Polytope homothety_enlarge(const Polytope& g, double eps) {
  const double s = homothety_factor(g, eps);
  if (eps == 0.0) return g;
  const Point c = check_A1(g).center;
  std::vector<Point> pts;
  for (const Point& v : g.extreme_points()) pts.push_back(c + s * (v - c));
  return extreme_points(std::move(pts), false);
}

Polytope displace_vertex(const Polytope& g, std::size_t vertex, const Point& shift) {
  require(vertex < g.num_extreme(), "displace_vertex: vertex position out of range");
  require(shift.size() == g.ambient_dim(), "displace_vertex: shift has the wrong dimension");
  auto pts = g.extreme_points();
  pts[vertex] += shift;
  return extreme_points(std::move(pts), false);
}

namespace {

constexpr double kShrink = 0.7;

Point shrunk_vertex(int d, int j) {
  Point v = Point::Constant(d + 1, (1.0 - kShrink) / (d + 1));
  v(j) += kShrink;
  return v;
}

std::size_t position_of(const Polytope& g, const Point& v) {
  const auto ext = g.extreme_points();
  for (std::size_t i = 0; i < ext.size(); ++i)
    if ((ext[i] - v).norm() <= kGeomTol) return i;
  throw InvariantViolation("minimax_pair: chopped vertex is not extreme");
}

}  // namespace

MinimaxPair minimax_pair(int k, int d, double eps) {
  require(k >= 2, "minimax_pair: need k >= 2");
  require(d >= 1, "minimax_pair: need d >= 1");
  MinimaxPair out{extreme_points({shrunk_vertex(d, 0)}), extreme_points({shrunk_vertex(d, 0)})};
  const int half = k / 2;
  std::vector<Point> pts;
  if (half <= d || d == 1) {
    out.q = std::min(half, d);
    for (int j = 0; j <= out.q; ++j) pts.push_back(shrunk_vertex(d, j));
  } else {
    // d-simplex plus k - 2d points on a shallow spherical cap over the facet
    // opposite vertex 0; the cap keeps vertex 0 adjacent to the d others only.
    out.q = d;
    out.simplex_case = false;
    for (int j = 0; j <= d; ++j) pts.push_back(shrunk_vertex(d, j));
    Point cf = Point::Zero(d + 1);
    for (int j = 1; j <= d; ++j) cf += pts[j];
    cf /= d;
    const Point u = (cf - pts[0]).normalized();
    const double rho_f = (pts[1] - cf).norm();
    const double t = 10.0 * rho_f;
    const double radius = std::hypot(t, rho_f);
    const Point a = (pts[1] - cf).normalized();
    Point b = pts[2] - cf;
    b -= b.dot(a) * a;
    b.normalize();
    const int extra = k - 2 * d;
    for (int i = 0; i < extra; ++i) {
      Point w;
      double rho;
      if (d == 2) {
        rho = 0.6 * rho_f * (2.0 * (i + 1) / (extra + 1) - 1.0);
        w = a;
      } else {
        const double phi = 2.0 * std::numbers::pi * i / extra;
        rho = 0.5 * rho_f / (d - 1);
        w = std::cos(phi) * a + std::sin(phi) * b;
      }
      const double h = std::sqrt(radius * radius - rho * rho) - t;
      pts.push_back(cf + rho * w + h * u);
    }
  }
  out.base = extreme_points(pts, true);
  require(out.base.num_extreme() == pts.size(), "minimax_pair: base vertices are not in convex position");
  out.chopped_vertex = position_of(out.base, pts[0]);
  out.chopped = eps_cap_chop(out.base, out.chopped_vertex, eps);
  return out;
}

}  // namespace admixtope
