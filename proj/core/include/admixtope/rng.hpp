#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace admixtope {

/// Stable 64-bit mixing of a base seed with a list of integer tags.
/// Used for per-cell and per-chain stream derivation; the value depends only
/// on the inputs, never on scheduling.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

/// Seeded random stream. All variates are generated by code in this library
/// on top of mt19937_64, so streams are reproducible across standard
/// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double normal();
  /// Gamma(shape, 1). Marsaglia-Tsang, with the shape < 1 boost.
  double gamma(double shape);
  std::vector<double> dirichlet(std::span<const double> alpha);
  /// Inverse-CDF categorical draw over unnormalized nonnegative weights.
  /// Returns the first index whose cumulative weight strictly exceeds u * total.
  int categorical(std::span<const double> weights);
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace admixtope
