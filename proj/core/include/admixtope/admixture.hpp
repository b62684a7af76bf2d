#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "admixtope/polytope.hpp"
#include "admixtope/rng.hpp"

namespace admixtope {

/// Size limits enforced at model, dataset and config construction.
inline constexpr int kMaxD = 10;
inline constexpr int kMaxK = 10;
inline constexpr int kMaxN = 10'000;
inline constexpr int kMaxM = 10'000;

/// Dirichlet law of the mixing weights beta.
class MixingLaw {
 public:
  /// Throws InvalidArgument unless 1 <= k <= kMaxK and every entry is finite and positive.
  explicit MixingLaw(std::vector<double> gamma);
  static MixingLaw symmetric_law(int k, double gamma = 1.0);

  const std::vector<double>& gamma() const { return gamma_; }
  int k() const { return static_cast<int>(gamma_.size()); }
  bool symmetric() const { return symmetric_; }
  double total() const;

 private:
  std::vector<double> gamma_;
  bool symmetric_ = true;
};

/// Population structure theta (k rows on the simplex), mixing law and the
/// interior floor c0. c0 = 0 disables the floor, which admits boundary
/// fixtures such as the unit-mass point.
class AdmixtureModel {
 public:
  /// Throws InvalidArgument on shape or limit violations, rows off the
  /// simplex, or (c0 > 0) any entry <= c0.
  AdmixtureModel(Eigen::MatrixXd theta, MixingLaw mixing, double c0);

  const Eigen::MatrixXd& theta() const { return theta_; }
  const MixingLaw& mixing() const { return mixing_; }
  double c0() const { return c0_; }
  int k() const { return static_cast<int>(theta_.rows()); }
  int d() const { return static_cast<int>(theta_.cols()) - 1; }
  Point row(int j) const { return theta_.row(j).transpose(); }
  const Polytope& polytope() const { return polytope_; }

 private:
  Eigen::MatrixXd theta_;
  MixingLaw mixing_;
  double c0_;
  Polytope polytope_;
};

/// m documents of n symbols each, symbols in {0..d}; row-major storage.
class Dataset {
 public:
  Dataset(int d, int m, int n, std::vector<std::uint8_t> symbols);
  int d() const { return d_; }
  int m() const { return m_; }
  int n() const { return n_; }
  std::uint8_t at(int i, int j) const { return x_[static_cast<std::size_t>(i) * n_ + j]; }
  std::span<const std::uint8_t> row(int i) const {
    return {x_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }
  const std::vector<std::uint8_t>& symbols() const { return x_; }

 private:
  int d_, m_, n_;
  std::vector<std::uint8_t> x_;
};

/// Symbol frequencies of one row: counts / n.
struct EmpiricalFreq {
  std::vector<int> counts;
  int n = 0;
  Point eta_hat;
};

std::vector<double> sample_beta(const MixingLaw& mixing, Rng& rng);
/// eta = sum_j beta_j theta_j.
Point sample_eta(const AdmixtureModel& model, Rng& rng);
/// Per row: one eta, then n iid categorical(eta) symbols.
Dataset sample_dataset(const AdmixtureModel& model, int m, int n, Rng& rng);
/// Throws InvalidArgument for an empty row or a symbol > d.
EmpiricalFreq empirical_freq(std::span<const std::uint8_t> row, int d);
/// Symbol counts of a row (length d + 1).
std::vector<int> symbol_counts(std::span<const std::uint8_t> row, int d);
/// Tail envelope 2(d+1) exp(-2 n eps^2 / (d+1)) for |eta_hat - eta| >= eps.
double hoeffding_envelope(int n, int d, double eps);

}  // namespace admixtope
