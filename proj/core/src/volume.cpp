#include "admixtope/volume.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "admixtope/error.hpp"
#include "admixtope/rng.hpp"

namespace admixtope {

namespace {

using Vec2 = Eigen::Vector2d;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

std::vector<Vec2> counter_clockwise(std::vector<Vec2> pts) {
  Vec2 c = Vec2::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Vec2& a, const Vec2& b) {
    return std::atan2(a.y() - c.y(), a.x() - c.x()) < std::atan2(b.y() - c.y(), b.x() - c.x());
  });
  return pts;
}

double polygon_area(const std::vector<Vec2>& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * std::abs(s);
}

// Sutherland-Hodgman clipping of `subject` by the convex ccw polygon `clip`.
std::vector<Vec2> clip_convex(std::vector<Vec2> subject, const std::vector<Vec2>& clip) {
  for (std::size_t e = 0; e < clip.size() && !subject.empty(); ++e) {
    const Vec2 a = clip[e];
    const Vec2 b = clip[(e + 1) % clip.size()];
    auto side = [&](const Vec2& p) { return cross(b - a, p - a); };
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < subject.size(); ++i) {
      const Vec2 cur = subject[i];
      const Vec2 prev = subject[(i + subject.size() - 1) % subject.size()];
      const double sc = side(cur), sp = side(prev);
      if (sc >= 0.0) {
        if (sp < 0.0) out.push_back(prev + (cur - prev) * (sp / (sp - sc)));
        out.push_back(cur);
      } else if (sp >= 0.0) {
        out.push_back(prev + (cur - prev) * (sp / (sp - sc)));
      }
    }
    subject = std::move(out);
  }
  return subject;
}

std::vector<Point> union_extremes(const Polytope& a, const Polytope& b) {
  std::vector<Point> all = a.extreme_points();
  const auto more = b.extreme_points();
  all.insert(all.end(), more.begin(), more.end());
  return all;
}

}  // namespace

bool same_affine_span(const Polytope& a, const Polytope& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.affine_dim() != b.affine_dim()) return false;
  const auto all = union_extremes(a, b);
  return affine_span(all).dim() == a.affine_dim();
}

VolumeEstimate sym_diff_volume(const Polytope& a, const Polytope& b, VolumeMethod method,
                               std::size_t samples, std::uint64_t seed) {
  require(same_affine_span(a, b),
          "sym_diff_volume: polytopes do not share an affine span; the symmetric-difference volume is undefined");
  const int p = a.affine_dim();
  const auto all = union_extremes(a, b);
  const AffineFrame frame = affine_span(all);
  if (p == 0) return {};

  if (method == VolumeMethod::Exact2d) {
    if (p != 2) throw Unsupported("sym_diff_volume: exact2d requires affine dimension 2");
    auto local_polygon = [&](const Polytope& g) {
      std::vector<Vec2> poly;
      for (const Point& v : g.extreme_points()) poly.emplace_back(frame.to_local(v));
      return counter_clockwise(std::move(poly));
    };
    const auto pa = local_polygon(a);
    const auto pb = local_polygon(b);
    const auto inter = clip_convex(pa, pb);
    const double value = polygon_area(pa) + polygon_area(pb) - 2.0 * (inter.size() >= 3 ? polygon_area(inter) : 0.0);
    return {std::max(0.0, value), 0.0};
  }

  require(samples > 0, "sym_diff_volume: need at least one Monte Carlo sample");
  Eigen::VectorXd lo = frame.to_local(all.front());
  Eigen::VectorXd hi = lo;
  for (const Point& v : all) {
    const Eigen::VectorXd y = frame.to_local(v);
    lo = lo.cwiseMin(y);
    hi = hi.cwiseMax(y);
  }
  const double box = (hi - lo).prod();
  const FacetStructure fa = facet_structure(a);
  const FacetStructure fb = facet_structure(b);
  Rng rng(seed);
  std::size_t hits = 0;
  Eigen::VectorXd y(p);
  for (std::size_t s = 0; s < samples; ++s) {
    for (int i = 0; i < p; ++i) y(i) = lo(i) + (hi(i) - lo(i)) * rng.uniform();
    const Point x = frame.to_ambient(y);
    const bool in_a = fa.contains_local(a.frame().to_local(x), 0.0);
    const bool in_b = fb.contains_local(b.frame().to_local(x), 0.0);
    if (in_a != in_b) ++hits;
  }
  const double f = static_cast<double>(hits) / static_cast<double>(samples);
  return {box * f, box * std::sqrt(f * (1.0 - f) / static_cast<double>(samples))};
}

}  // namespace admixtope
