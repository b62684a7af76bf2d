#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "admixtope/admixture.hpp"
#include "admixtope/polytope.hpp"
#include "admixtope/prior.hpp"

namespace admixtope {

enum class BoundId {
  LemM_a,
  LemM_b,
  Ldiff1_a,
  Ldiff1_b,
  Ldiff3,
  ThmC_a,
  LemKLez,
  LemKLbound,
  LemW,
  ThmKL_mass,
  Hoeffding_etahat,
};

const char* to_string(BoundId id);
/// Throws InvalidArgument for an unknown name.
BoundId bound_id_from_string(const std::string& name);
std::vector<BoundId> all_bound_ids();
/// Bounds whose constants are explicit, so the inequality itself is checked.
bool is_literal(BoundId id);

/// Objects a bound quantifies over. Each bound reads only the fields it needs
/// and rejects the instance when one is missing.
struct BoundInstance {
  std::string label;
  std::optional<Polytope> g;
  std::optional<Polytope> g2;
  /// Pairs for exponent regressions (first held fixed, second varying).
  std::vector<std::pair<Polytope, Polytope>> family;
  std::optional<AdmixtureModel> model;
  std::optional<AdmixtureModel> model2;
  std::vector<std::pair<AdmixtureModel, AdmixtureModel>> model_family;
  std::vector<int> ns;
  int n = 0;
  std::optional<PriorSpec> prior;
  std::vector<double> deltas;
  double eps = 0.0;
  double alpha = 0.0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
};

struct BoundBudget {
  std::size_t mc_samples = 20'000;
  int threads = 1;
};

/// Outcome of one bound on one instance. For literal bounds lhs <= rhs is the
/// inequality. For exponent bounds lhs is the fitted slope, rhs the target
/// exponent and margin = tolerance - |lhs - rhs|; one-sided direction checks
/// use margin = lhs - rhs.
struct BoundReport {
  std::string bound_id;
  std::string instance;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool literal = false;
  std::map<std::string, double> fitted_constants;
  std::uint64_t seed = 0;
};

/// Tolerances on fitted exponents.
inline constexpr double kLemMbSlopeTol = 0.05;
inline constexpr double kLdiff1aSlopeTol = 0.15;
inline constexpr double kLinearSlopeTol = 0.1;
/// Absolute slack on literal inequalities.
inline constexpr double kLiteralSlack = 1e-9;

BoundReport bound_check(BoundId id, const BoundInstance& instance, const BoundBudget& budget = {});

}  // namespace admixtope
