#include "admixtope/admixture.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "admixtope/error.hpp"

namespace admixtope {

MixingLaw::MixingLaw(std::vector<double> gamma) : gamma_(std::move(gamma)) {
  require(!gamma_.empty() && static_cast<int>(gamma_.size()) <= kMaxK,
          "MixingLaw: need 1 <= k <= " + std::to_string(kMaxK));
  for (double g : gamma_) require(std::isfinite(g) && g > 0.0, "MixingLaw: gamma entries must be positive");
  for (double g : gamma_) symmetric_ = symmetric_ && g == gamma_.front();
}

MixingLaw MixingLaw::symmetric_law(int k, double gamma) {
  require(k >= 1, "MixingLaw: need k >= 1");
  return MixingLaw(std::vector<double>(static_cast<std::size_t>(k), gamma));
}

double MixingLaw::total() const { return std::accumulate(gamma_.begin(), gamma_.end(), 0.0); }

namespace {

Polytope rows_polytope(const Eigen::MatrixXd& theta) {
  require(theta.rows() >= 1 && theta.cols() >= 2, "AdmixtureModel: theta must be k x (d+1) with k >= 1, d >= 1");
  std::vector<Point> rows;
  for (Eigen::Index j = 0; j < theta.rows(); ++j) rows.emplace_back(theta.row(j).transpose());
  return extreme_points(std::move(rows), true);
}

}  // namespace

AdmixtureModel::AdmixtureModel(Eigen::MatrixXd theta, MixingLaw mixing, double c0)
    : theta_(std::move(theta)), mixing_(std::move(mixing)), c0_(c0), polytope_(rows_polytope(theta_)) {
  require(k() <= kMaxK, "AdmixtureModel: k exceeds " + std::to_string(kMaxK));
  require(d() <= kMaxD, "AdmixtureModel: d exceeds " + std::to_string(kMaxD));
  require(mixing_.k() == k(), "AdmixtureModel: gamma length differs from the number of rows");
  require(std::isfinite(c0_) && c0_ >= 0.0 && c0_ < 1.0 / (d() + 1), "AdmixtureModel: c0 must lie in [0, 1/(d+1))");
  if (c0_ > 0.0)
    require(theta_.minCoeff() > c0_, "AdmixtureModel: every theta entry must exceed c0 = " + std::to_string(c0_));
}

Dataset::Dataset(int d, int m, int n, std::vector<std::uint8_t> symbols) : d_(d), m_(m), n_(n), x_(std::move(symbols)) {
  require(d >= 1 && d <= kMaxD, "Dataset: d out of range");
  require(m >= 0 && m <= kMaxM && n >= 0 && n <= kMaxN, "Dataset: m or n out of range");
  require(x_.size() == static_cast<std::size_t>(m) * static_cast<std::size_t>(n), "Dataset: symbol count differs from m * n");
  for (auto s : x_) require(s <= d, "Dataset: symbol outside the alphabet");
}

std::vector<double> sample_beta(const MixingLaw& mixing, Rng& rng) {
  if (mixing.k() == 1) return {1.0};
  return rng.dirichlet(mixing.gamma());
}

Point sample_eta(const AdmixtureModel& model, Rng& rng) {
  const auto beta = sample_beta(model.mixing(), rng);
  Point eta = Point::Zero(model.d() + 1);
  for (int j = 0; j < model.k(); ++j) eta += beta[j] * model.row(j);
  return eta;
}

Dataset sample_dataset(const AdmixtureModel& model, int m, int n, Rng& rng) {
  require(m >= 1 && m <= kMaxM && n >= 1 && n <= kMaxN, "sample_dataset: m and n must be in [1, 10^4]");
  std::vector<std::uint8_t> x(static_cast<std::size_t>(m) * n);
  std::vector<double> w(static_cast<std::size_t>(model.d()) + 1);
  for (int i = 0; i < m; ++i) {
    const Point eta = sample_eta(model, rng);
    for (int l = 0; l <= model.d(); ++l) w[l] = eta(l);
    for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint8_t>(rng.categorical(w));
  }
  return Dataset(model.d(), m, n, std::move(x));
}

std::vector<int> symbol_counts(std::span<const std::uint8_t> row, int d) {
  std::vector<int> c(static_cast<std::size_t>(d) + 1, 0);
  for (auto s : row) {
    require(s <= d, "symbol outside the alphabet");
    ++c[s];
  }
  return c;
}

EmpiricalFreq empirical_freq(std::span<const std::uint8_t> row, int d) {
  require(!row.empty(), "empirical_freq: empty row");
  EmpiricalFreq f;
  f.counts = symbol_counts(row, d);
  f.n = static_cast<int>(row.size());
  f.eta_hat.resize(d + 1);
  for (int l = 0; l <= d; ++l) f.eta_hat(l) = static_cast<double>(f.counts[l]) / f.n;
  return f;
}

double hoeffding_envelope(int n, int d, double eps) {
  return 2.0 * (d + 1) * std::exp(-2.0 * n * eps * eps / (d + 1));
}

}  // namespace admixtope
