#include "admixtope/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "admixtope/coupling.hpp"
#include "admixtope/divergence.hpp"
#include "admixtope/error.hpp"
#include "admixtope/metrics.hpp"
#include "admixtope/rng.hpp"
#include "admixtope/stats.hpp"
#include "admixtope/volume.hpp"

namespace admixtope {

namespace {

struct IdName {
  BoundId id;
  const char* name;
};

constexpr IdName kIds[] = {
    {BoundId::LemM_a, "LemM_a"},         {BoundId::LemM_b, "LemM_b"},
    {BoundId::Ldiff1_a, "Ldiff1_a"},     {BoundId::Ldiff1_b, "Ldiff1_b"},
    {BoundId::Ldiff3, "Ldiff3"},         {BoundId::ThmC_a, "ThmC_a"},
    {BoundId::LemKLez, "LemKLez"},       {BoundId::LemKLbound, "LemKLbound"},
    {BoundId::LemW, "LemW"},             {BoundId::ThmKL_mass, "ThmKL_mass"},
    {BoundId::Hoeffding_etahat, "Hoeffding_etahat"},
};

constexpr double kTiny = 1e-12;

BoundReport start(BoundId id, const BoundInstance& inst) {
  BoundReport r;
  r.bound_id = to_string(id);
  r.instance = inst.label;
  r.literal = is_literal(id);
  r.seed = inst.seed;
  return r;
}

BoundReport literal(BoundReport r, double lhs, double rhs) {
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = kLiteralSlack;
  r.pass = std::isfinite(r.margin) && r.margin >= -kLiteralSlack;
  return r;
}

BoundReport two_sided(BoundReport r, double slope, double target, double tol) {
  r.lhs = slope;
  r.rhs = target;
  r.tolerance = tol;
  r.margin = tol - std::abs(slope - target);
  r.pass = r.margin >= 0.0;
  return r;
}

BoundReport one_sided(BoundReport r, double value, double threshold) {
  r.lhs = value;
  r.rhs = threshold;
  r.tolerance = 0.0;
  r.margin = value - threshold;
  r.pass = r.margin >= 0.0;
  return r;
}

const Polytope& need(const std::optional<Polytope>& g, const char* what) {
  if (!g) throw InvalidArgument(std::string("bound instance is missing ") + what);
  return *g;
}

const AdmixtureModel& need(const std::optional<AdmixtureModel>& m, const char* what) {
  if (!m) throw InvalidArgument(std::string("bound instance is missing ") + what);
  return *m;
}

void need_family(std::size_t size, const char* what) {
  if (size < 2) throw InvalidArgument(std::string("bound instance needs at least two ") + what);
}

double sym_diff(const Polytope& a, const Polytope& b, const BoundBudget& budget, std::uint64_t seed) {
  const auto method = a.affine_dim() == 2 ? VolumeMethod::Exact2d : VolumeMethod::MonteCarlo;
  return sym_diff_volume(a, b, method, budget.mc_samples, seed).value;
}

// Fits log y on log x over the family; x = dH.
struct Curve {
  std::vector<double> x, y;
};

BoundReport volume_exponent(BoundId id, const BoundInstance& inst, const BoundBudget& budget, double target,
                            double tol, const char* constant, bool lower) {
  need_family(inst.family.size(), "family pairs");
  Curve c;
  for (std::size_t i = 0; i < inst.family.size(); ++i) {
    const auto& [a, b] = inst.family[i];
    const double dh = hausdorff(a, b);
    const double vol = sym_diff(a, b, budget, derive_seed(inst.seed, {i}));
    if (dh > kTiny && vol > 0.0) {
      c.x.push_back(dh);
      c.y.push_back(vol);
    }
  }
  need_family(c.x.size(), "nondegenerate family pairs");
  const LinearFit fit = log_log_fit(c.x, c.y);
  BoundReport r = two_sided(start(id, inst), fit.slope, target, tol);
  double k = lower ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    const double ratio = c.y[i] / std::pow(c.x[i], target);
    k = lower ? std::min(k, ratio) : std::max(k, ratio);
  }
  r.fitted_constants[constant] = k;
  r.fitted_constants["intercept"] = fit.intercept;
  return r;
}

BoundReport check_lem_m_a(const BoundInstance& inst) {
  const Polytope& a = need(inst.g, "polytope g");
  const Polytope& b = need(inst.g2, "polytope g2");
  return literal(start(BoundId::LemM_a, inst), hausdorff(a, b), min_matching(a, b));
}

BoundReport check_lem_m_b(const BoundInstance& inst) {
  need_family(inst.family.size(), "family pairs");
  Curve c;
  double c0 = 0.0;
  for (const auto& [a, b] : inst.family) {
    const double dh = hausdorff(a, b);
    const double dm = min_matching(a, b);
    if (dh <= kTiny) continue;
    c.x.push_back(dh);
    c.y.push_back(dm);
    c0 = std::max(c0, dm / dh);
  }
  need_family(c.x.size(), "nondegenerate family pairs");
  BoundReport r = two_sided(start(BoundId::LemM_b, inst), log_log_fit(c.x, c.y).slope, 1.0, kLemMbSlopeTol);
  r.fitted_constants["C0"] = c0;
  return r;
}

BoundReport check_thm_c_a(const BoundInstance& inst) {
  need_family(inst.model_family.size(), "model pairs");
  require(!inst.ns.empty(), "ThmC_a: instance needs a list of n");
  std::vector<int> ns = inst.ns;
  std::sort(ns.begin(), ns.end());
  struct Row {
    double dh;
    int p;
    std::vector<double> v;
  };
  std::vector<Row> rows;
  for (const auto& [m0, m1] : inst.model_family) {
    Row row{hausdorff(m0.polytope(), m1.polytope()),
            std::max(m0.polytope().affine_dim(), m1.polytope().affine_dim()), {}};
    for (int n : ns) row.v.push_back(divergences_exact(m0, m1, n).V);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.dh < b.dh; });
  const int d = inst.model_family.front().first.d();
  int violations = 0;
  bool combined_monotone = true;
  double c1 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t t = 0; t < ns.size(); ++t) {
      const auto envelope = [&](std::size_t idx) {
        return rows[i].v[idx] + 6.0 * (d + 1) * std::exp(-ns[idx] * rows[i].dh * rows[i].dh / (8.0 * (d + 1)));
      };
      if (t > 0) {
        if (rows[i].v[t] < rows[i].v[t - 1] - kTiny) ++violations;
        if (envelope(t) < envelope(t - 1) - kTiny) combined_monotone = false;
      }
      if (i > 0 && rows[i].v[t] < rows[i - 1].v[t] - kTiny) ++violations;
      if (rows[i].dh > kTiny) c1 = std::min(c1, envelope(t) / std::pow(rows[i].dh, rows[i].p + inst.alpha));
    }
  }
  BoundReport r = start(BoundId::ThmC_a, inst);
  r.lhs = violations;
  r.rhs = 0.0;
  r.margin = -static_cast<double>(violations);
  r.pass = violations == 0;
  r.fitted_constants["c1"] = c1;
  r.fitted_constants["envelope_monotone_in_n"] = combined_monotone ? 1.0 : 0.0;
  return r;
}

BoundReport check_lem_kl_ez(const BoundInstance& inst) {
  need_family(inst.model_family.size(), "model pairs");
  require(inst.n >= 1, "LemKLez: instance needs n >= 1");
  Curve c;
  bool literal_ok = true;
  double c1 = 0.0, worst = std::numeric_limits<double>::infinity();
  for (const auto& [m0, m1] : inst.model_family) {
    const ExactDivergences e = divergences_exact(m0, m1, inst.n);
    const double dh = hausdorff(m0.polytope(), m1.polytope());
    const double log_vol_ratio = std::log(volume(m1.polytope()) / volume(m0.polytope()));
    const double margin = log_vol_ratio - (e.K.infinite ? std::numeric_limits<double>::infinity() : e.K.value);
    worst = std::min(worst, margin);
    if (!(margin >= -kLiteralSlack)) literal_ok = false;
    if (dh > kTiny && !e.K.infinite && e.K.value > 0.0) {
      c.x.push_back(dh);
      c.y.push_back(e.K.value);
      c1 = std::max(c1, e.K.value / dh);
    }
  }
  need_family(c.x.size(), "pairs with positive K");
  BoundReport r = one_sided(start(BoundId::LemKLez, inst), log_log_fit(c.x, c.y).slope, 1.0 - kLinearSlopeTol);
  r.pass = r.pass && literal_ok;
  r.fitted_constants["C1"] = c1;
  r.fitted_constants["min_log_volume_ratio_margin"] = worst;
  return r;
}

BoundReport check_lem_kl_bound(const BoundInstance& inst, const BoundBudget& budget) {
  const AdmixtureModel& a = need(inst.model, "model");
  const AdmixtureModel& b = need(inst.model2, "model2");
  require(inst.n >= 1, "LemKLbound: instance needs n >= 1");
  const double c0 = std::min(a.theta().minCoeff(), b.theta().minCoeff());
  require(c0 > 0.0, "LemKLbound: both polytopes must stay inside the simplex interior");
  const ExactDivergences e = divergences_exact(a, b, inst.n, budget.threads);
  const CouplingEstimate w = wasserstein_shared_beta(a, b, bottleneck_matching(a, b), budget.mc_samples, inst.seed);
  const double lhs = e.K.infinite ? std::numeric_limits<double>::infinity() : e.K.value;
  BoundReport r = literal(start(BoundId::LemKLbound, inst), lhs, inst.n / c0 * (w.w1.value + 3.0 * w.w1.std_error));
  r.fitted_constants["c0"] = c0;
  r.fitted_constants["W1"] = w.w1.value;
  r.fitted_constants["W1_stderr"] = w.w1.std_error;
  return r;
}

BoundReport check_lem_w(const BoundInstance& inst, const BoundBudget& budget) {
  const AdmixtureModel& a = need(inst.model, "model");
  const AdmixtureModel& b = need(inst.model2, "model2");
  const CouplingEstimate w = wasserstein_shared_beta(a, b, bottleneck_matching(a, b), budget.mc_samples, inst.seed);
  BoundReport r = literal(start(BoundId::LemW, inst), w.w1.value - 3.0 * w.w1.std_error, w.analytic_bound);
  const double dh = hausdorff(a.polytope(), b.polytope());
  r.fitted_constants["W1"] = w.w1.value;
  if (dh > kTiny) r.fitted_constants["C0"] = w.analytic_bound / dh;
  return r;
}

BoundReport check_thm_kl_mass(const BoundInstance& inst, const BoundBudget& budget) {
  const AdmixtureModel& m0 = need(inst.model, "model");
  if (!inst.prior) throw InvalidArgument("bound instance is missing prior");
  require(!inst.deltas.empty() && inst.n >= 1 && inst.reps >= 1, "ThmKL_mass: needs deltas, n and reps");
  std::vector<double> deltas = inst.deltas;
  std::sort(deltas.begin(), deltas.end());
  const KlMass mass = prior_kl_mass(*inst.prior, m0, deltas, inst.n, inst.reps, inst.seed, budget.threads);
  BoundReport r = start(BoundId::ThmKL_mass, inst);
  bool monotone = true;
  double lowest = 1.0;
  const double kd = static_cast<double>(inst.prior->k) * inst.prior->d;
  const double n3 = std::pow(static_cast<double>(inst.n), 3);
  for (std::size_t i = 0; i < mass.points.size(); ++i) {
    const auto& pt = mass.points[i];
    lowest = std::min(lowest, pt.mass);
    if (i > 0 && pt.mass < mass.points[i - 1].mass) monotone = false;
    r.fitted_constants["mass_" + std::to_string(i)] = pt.mass;
    if (std::isfinite(pt.delta) && pt.delta > 0.0)
      r.fitted_constants["c_" + std::to_string(i)] = pt.mass / std::pow(pt.delta * pt.delta / n3, kd);
  }
  r.lhs = lowest;
  r.rhs = 0.0;
  r.margin = lowest;
  r.pass = lowest > 0.0 && monotone;
  return r;
}

BoundReport check_hoeffding(const BoundInstance& inst) {
  const AdmixtureModel& m = need(inst.model, "model");
  require(inst.n >= 1 && inst.reps >= 1 && inst.eps > 0.0, "Hoeffding_etahat: needs n, reps and eps > 0");
  Rng rng(inst.seed);
  const int d = m.d();
  std::vector<double> w(static_cast<std::size_t>(d) + 1);
  Eigen::VectorXd counts(d + 1);
  std::size_t hits = 0;
  for (std::size_t rep = 0; rep < inst.reps; ++rep) {
    const Point eta = sample_eta(m, rng);
    for (int l = 0; l <= d; ++l) w[l] = eta(l);
    counts.setZero();
    for (int j = 0; j < inst.n; ++j) counts(rng.categorical(w)) += 1.0;
    if ((counts / inst.n - eta).norm() >= inst.eps) ++hits;
  }
  const double f = static_cast<double>(hits) / static_cast<double>(inst.reps);
  const double sigma = std::sqrt(f * (1.0 - f) / static_cast<double>(inst.reps));
  const double bound = hoeffding_envelope(inst.n, d, inst.eps);
  BoundReport r = literal(start(BoundId::Hoeffding_etahat, inst), f, bound + 3.0 * sigma);
  r.fitted_constants["tail_frequency"] = f;
  r.fitted_constants["envelope"] = bound;
  return r;
}

}  // namespace

const char* to_string(BoundId id) {
  for (const auto& e : kIds)
    if (e.id == id) return e.name;
  return "?";
}

BoundId bound_id_from_string(const std::string& name) {
  for (const auto& e : kIds)
    if (name == e.name) return e.id;
  throw InvalidArgument("unknown bound id '" + name + "'");
}

std::vector<BoundId> all_bound_ids() {
  std::vector<BoundId> out;
  for (const auto& e : kIds) out.push_back(e.id);
  return out;
}

bool is_literal(BoundId id) {
  return id == BoundId::LemM_a || id == BoundId::LemKLbound || id == BoundId::LemW || id == BoundId::Hoeffding_etahat;
}

BoundReport bound_check(BoundId id, const BoundInstance& instance, const BoundBudget& budget) {
  switch (id) {
    case BoundId::LemM_a: return check_lem_m_a(instance);
    case BoundId::LemM_b: return check_lem_m_b(instance);
    case BoundId::Ldiff1_a: {
      need_family(instance.family.size(), "family pairs");
      const double p = instance.family.front().first.affine_dim();
      return volume_exponent(id, instance, budget, p, kLdiff1aSlopeTol, "c1", true);
    }
    case BoundId::Ldiff1_b: return volume_exponent(id, instance, budget, 1.0, kLinearSlopeTol, "C1", false);
    case BoundId::Ldiff3: return volume_exponent(id, instance, budget, 1.0, kLinearSlopeTol, "c2", true);
    case BoundId::ThmC_a: return check_thm_c_a(instance);
    case BoundId::LemKLez: return check_lem_kl_ez(instance);
    case BoundId::LemKLbound: return check_lem_kl_bound(instance, budget);
    case BoundId::LemW: return check_lem_w(instance, budget);
    case BoundId::ThmKL_mass: return check_thm_kl_mass(instance, budget);
    case BoundId::Hoeffding_etahat: return check_hoeffding(instance);
  }
  throw InvalidArgument("bound_check: unknown bound id");
}

}  // namespace admixtope
