#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "admixtope/admixture.hpp"
#include "admixtope/error.hpp"
#include "admixtope/marginal.hpp"
#include "admixtope/prior.hpp"

namespace admixtope {

enum class DivergenceKind { K, K2, H2, V, W1 };
enum class DivergenceMethod { ExactEnum, MonteCarlo, Coupling };

const char* to_string(DivergenceKind kind);

struct DivergenceEstimate {
  DivergenceKind kind = DivergenceKind::K;
  double value = 0.0;
  double std_error = 0.0;  ///< 0 for exact values
  DivergenceMethod method = DivergenceMethod::ExactEnum;
  bool infinite = false;      ///< K or K2 is +infinity (value is then meaningless)
  bool underpowered = false;  ///< Monte Carlo stderr exceeds value / 2
};

/// Largest number of sequences (d+1)^n the exact enumeration accepts.
inline constexpr double kMaxEnumeratedSequences = 1 << 20;

/// Distribution of n-symbol rows under a model, by count type. Every sequence
/// with the same counts has the same probability.
struct OutcomeTable {
  std::vector<std::vector<int>> counts;  ///< one entry per count type
  std::vector<double> log_multiplicity;  ///< log of the number of sequences of that type
  std::vector<double> logp;              ///< log probability of one such sequence
};

/// Enumerates all count types of length-n rows over {0..d}.
std::vector<std::vector<int>> count_types(int n, int d);
OutcomeTable outcome_table(const AdmixtureModel& model, int n, int threads = 1,
                           MarginalMethod method = MarginalMethod::ExactMoment);

/// All four exact divergences between the n-row marginals p (model) and q (model2).
struct ExactDivergences {
  ExtendedReal K;
  ExtendedReal K2;
  double h2 = 0.0;
  double V = 0.0;
  double total_p = 0.0;  ///< probability mass enumerated on each side
  double total_q = 0.0;
};

/// Throws InvalidArgument when (d+1)^n exceeds kMaxEnumeratedSequences or the
/// alphabets differ, and InvariantViolation when a side does not sum to 1
/// within 1e-6.
ExactDivergences divergences_exact(const AdmixtureModel& model, const AdmixtureModel& model2, int n, int threads = 1);
DivergenceEstimate divergence_exact(const AdmixtureModel& model, const AdmixtureModel& model2, int n,
                                    DivergenceKind kind, int threads = 1);

struct MonteCarloDivergence {
  DivergenceEstimate estimate;
  double max_abs_log_ratio = 0.0;  ///< largest |log p/q| over the sampled rows
  double log_ratio_envelope = 0.0; ///< n log(1 / min(c0, c0'))
};

/// Rows are drawn from `model`; each row's log p and log q are exact.
/// Requires K, K2 or H2 and c0 > 0 on both models.
MonteCarloDivergence divergence_mc(const AdmixtureModel& model, const AdmixtureModel& model2, int n,
                                   DivergenceKind kind, std::size_t samples, std::uint64_t seed);

struct HellingerInformation {
  ExtendedReal psi;                    ///< +infinity when no candidate is far enough
  std::optional<std::size_t> argmin;   ///< first minimizing candidate
  std::vector<double> d_h;             ///< dH(G0, G) per candidate
  std::vector<double> h2;              ///< exact h^2 per candidate
};

/// inf over candidates with dH(G0, G) >= delta / 2 of h^2 between the n-row marginals.
HellingerInformation hellinger_information(const AdmixtureModel& model0, std::span<const AdmixtureModel> candidates,
                                           int n, double delta, int threads = 1);
/// Recomputes psi for another delta from an existing candidate evaluation.
HellingerInformation hellinger_information_at(const HellingerInformation& evaluated, double delta);

/// c0 psi / (4 n C0).
double phi_from_psi(double psi, int n, double c0, double C0);

struct KlMassPoint {
  double delta = 0.0;  ///< +infinity allowed
  double mass = 0.0;
  double std_error = 0.0;
  std::size_t hits = 0;
  /// One-sided 95% upper bound 3/N reported when there are no hits.
  std::optional<double> upper_bound_if_zero;
};

struct KlMass {
  std::vector<KlMassPoint> points;
  std::vector<ExtendedReal> K;   ///< per prior draw
  std::vector<ExtendedReal> K2;  ///< per prior draw
};

/// Fraction of `samples` prior draws G with K <= delta^2 and K2 <= delta^2
/// between p(model0) and p(G) on n-symbol rows, for each delta on one shared
/// draw set.
KlMass prior_kl_mass(const PriorSpec& prior, const AdmixtureModel& model0, std::span<const double> deltas, int n,
                     std::size_t samples, std::uint64_t seed, int threads = 1);

}  // namespace admixtope
