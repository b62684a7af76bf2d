#include "admixtope/harness/suites.hpp"

#include <cmath>
#include <string>

#include "admixtope/constructions.hpp"
#include "admixtope/error.hpp"
#include "admixtope/prior.hpp"

namespace admixtope::harness {

namespace {

Point zero_sum_direction(Rng& rng, int dim) {
  for (;;) {
    Point u(dim);
    for (int i = 0; i < dim; ++i) u(i) = rng.normal();
    u.array() -= u.mean();
    if (u.norm() > 1e-6) return u.normalized();
  }
}

int pick(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

Polytope polytope_of(const std::vector<Point>& pts) { return extreme_points(pts, false); }

}  // namespace

Polytope random_polytope(Rng& rng, int d, int k) {
  const std::vector<double> ones(static_cast<std::size_t>(d) + 1, 1.0);
  std::vector<Point> pts;
  for (int j = 0; j < k; ++j) {
    const auto x = rng.dirichlet(ones);
    pts.emplace_back(Eigen::Map<const Eigen::VectorXd>(x.data(), d + 1));
  }
  return extreme_points(std::move(pts), true);
}

AdmixtureModel random_model(Rng& rng, int k, int d, double floor, const std::vector<double>& gamma) {
  const std::vector<double> ones(static_cast<std::size_t>(d) + 1, 1.0);
  Eigen::MatrixXd theta(k, d + 1);
  for (int j = 0; j < k; ++j) {
    const auto row = truncated_dirichlet(ones, floor, rng);
    for (int l = 0; l <= d; ++l) theta(j, l) = row[l];
  }
  return AdmixtureModel(std::move(theta), MixingLaw(gamma), floor);
}

AdmixtureModel perturbed_model(const AdmixtureModel& model, Rng& rng, double scale) {
  Eigen::MatrixXd theta = model.theta();
  for (int j = 0; j < model.k(); ++j) {
    const Point u = zero_sum_direction(rng, model.d() + 1);
    for (double step = scale; step > 1e-12; step /= 2.0) {
      const Eigen::RowVectorXd row = model.theta().row(j) + step * u.transpose();
      if (row.minCoeff() > model.c0()) {
        theta.row(j) = row;
        break;
      }
    }
  }
  return AdmixtureModel(std::move(theta), model.mixing(), model.c0());
}

Polytope reference_triangle(double s) {
  std::vector<Point> pts;
  for (int j = 0; j < 3; ++j) {
    Point v = Point::Constant(3, (1.0 - s) / 3.0);
    v(j) += s;
    pts.push_back(v);
  }
  return extreme_points(std::move(pts), true);
}

AdmixtureModel uniform_mixing_model(const std::vector<Point>& rows) {
  require(!rows.empty(), "uniform_mixing_model: no rows");
  Eigen::MatrixXd theta(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t j = 0; j < rows.size(); ++j) theta.row(static_cast<Eigen::Index>(j)) = rows[j].transpose();
  return AdmixtureModel(std::move(theta), MixingLaw::symmetric_law(static_cast<int>(rows.size())), 0.0);
}

AdmixtureModel triangle_model(const Polytope& triangle) { return uniform_mixing_model(triangle.extreme_points()); }

std::pair<AdmixtureModel, AdmixtureModel> capped_model_pair(const Polytope& base, std::size_t vertex, double eps) {
  const Polytope chopped = eps_cap_chop(base, vertex, eps);
  const FacetStructure fs = facet_structure(base);
  const auto ext = base.extreme_points();
  std::vector<Point> rows0, rows1;
  for (std::size_t u : fs.adjacency[vertex]) {
    rows0.push_back(ext[vertex]);
    rows1.push_back(ext[vertex] + eps * (ext[u] - ext[vertex]).normalized());
  }
  for (std::size_t i = 0; i < ext.size(); ++i) {
    if (i == vertex) continue;
    rows0.push_back(ext[i]);
    rows1.push_back(ext[i]);
  }
  if (polytope_of(rows1).num_extreme() != chopped.num_extreme())
    throw InvariantViolation("capped_model_pair: cap rows disagree with eps_cap_chop");
  return {uniform_mixing_model(rows0), uniform_mixing_model(rows1)};
}

std::vector<double> log_space(double lo, double hi, int count) {
  require(lo > 0.0 && hi > lo && count >= 2, "log_space: need 0 < lo < hi and count >= 2");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  return out;
}

std::vector<BoundInstance> build_suite(const SuiteConfig& suite, std::uint64_t seed) {
  std::vector<BoundInstance> out;
  const Polytope tri = reference_triangle();
  for (std::size_t i = 0; i < suite.instances; ++i) {
    BoundInstance inst;
    inst.seed = derive_seed(seed, {static_cast<std::uint64_t>(suite.id), i});
    Rng rng(inst.seed);
    inst.label = std::string(to_string(suite.id)) + "#" + std::to_string(i);
    switch (suite.id) {
      case BoundId::LemM_a: {
        const int d = pick(rng, 1, 3);
        inst.g = random_polytope(rng, d, pick(rng, 1, 5));
        inst.g2 = random_polytope(rng, d, pick(rng, 1, 5));
        inst.label += " d=" + std::to_string(d);
        break;
      }
      case BoundId::LemM_b:
      case BoundId::Ldiff3: {
        const auto vertex = static_cast<std::size_t>(pick(rng, 0, 2));
        Point dir = tri.extreme_points()[vertex] - Point::Constant(3, 1.0 / 3.0);
        if (suite.id == BoundId::LemM_b) dir = zero_sum_direction(rng, 3);
        for (double t : log_space(0.001, 0.05, 12))
          inst.family.emplace_back(tri, displace_vertex(tri, vertex, t * dir.normalized()));
        inst.label += " vertex=" + std::to_string(vertex);
        break;
      }
      case BoundId::Ldiff1_a: {
        const auto vertex = static_cast<std::size_t>(pick(rng, 0, 2));
        for (double e : log_space(0.005, 0.1, 10)) inst.family.emplace_back(tri, eps_cap_chop(tri, vertex, e));
        inst.label += " vertex=" + std::to_string(vertex);
        break;
      }
      case BoundId::Ldiff1_b:
        for (double e : log_space(0.001, 0.05, 10)) inst.family.emplace_back(tri, homothety_enlarge(tri, e));
        break;
      case BoundId::ThmC_a: {
        const auto vertex = static_cast<std::size_t>(pick(rng, 0, 2));
        for (double e : {0.05, 0.1, 0.15, 0.2, 0.25}) inst.model_family.push_back(capped_model_pair(tri, vertex, e));
        const int top = suite.n > 0 ? suite.n : 8;
        for (int n = 2; n <= top; ++n) inst.ns.push_back(n);
        inst.label += " vertex=" + std::to_string(vertex);
        break;
      }
      case BoundId::LemKLez: {
        const AdmixtureModel m0 = triangle_model(tri);
        const Point c = Point::Constant(3, 1.0 / 3.0);
        for (double e : log_space(0.002, 0.05, 8)) {
          const double s = homothety_factor(tri, e);
          std::vector<Point> rows;
          for (int j = 0; j < 3; ++j) rows.push_back(c + s * (m0.row(j) - c));
          inst.model_family.emplace_back(m0, uniform_mixing_model(rows));
        }
        inst.n = suite.n > 0 ? suite.n : 3;
        break;
      }
      case BoundId::LemKLbound:
      case BoundId::LemW: {
        const int k = pick(rng, 2, 3);
        const int d = pick(rng, 1, 2);
        const double g = 0.5 + 1.5 * rng.uniform();
        const AdmixtureModel a = random_model(rng, k, d, 0.05, std::vector<double>(static_cast<std::size_t>(k), g));
        inst.model = a;
        inst.model2 = perturbed_model(a, rng, 0.02 + 0.1 * rng.uniform());
        inst.n = pick(rng, 1, suite.n > 0 ? suite.n : 6);
        inst.label += " k=" + std::to_string(k) + " d=" + std::to_string(d) + " n=" + std::to_string(inst.n);
        break;
      }
      case BoundId::ThmKL_mass: {
        PriorSpec prior;
        prior.k = 2;
        prior.d = 1;
        prior.gamma = {1.0, 1.0};
        inst.prior = prior;
        inst.model = prior_draw(prior, rng);
        inst.n = suite.n > 0 ? suite.n : 4;
        inst.deltas = suite.deltas.empty() ? std::vector<double>{0.3, 0.5} : suite.deltas;
        inst.reps = suite.reps > 0 ? suite.reps : 10'000;
        break;
      }
      case BoundId::Hoeffding_etahat: {
        inst.model = random_model(rng, 3, 2, 0.02, {1.0, 1.0, 1.0});
        inst.n = suite.n > 0 ? suite.n : 100;
        inst.eps = suite.eps > 0.0 ? suite.eps : 0.2;
        inst.reps = suite.reps > 0 ? suite.reps : 100'000;
        break;
      }
    }
    out.push_back(std::move(inst));
  }
  return out;
}

BoundReport run_bound(const SuiteConfig& suite, const BoundInstance& inst, const BoundBudget& budget) {
  BoundReport r = bound_check(suite.id, inst, budget);
  const bool two_sided = suite.id == BoundId::LemM_b || suite.id == BoundId::Ldiff1_a ||
                         suite.id == BoundId::Ldiff1_b || suite.id == BoundId::Ldiff3;
  if (suite.tolerance && two_sided) {
    r.tolerance = *suite.tolerance;
    r.margin = r.tolerance - std::abs(r.lhs - r.rhs);
    r.pass = r.margin >= 0.0;
  }
  return r;
}

}  // namespace admixtope::harness
