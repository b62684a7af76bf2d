#include "admixtope/rng.hpp"

#include <cmath>
#include <numeric>

#include "admixtope/error.hpp"

namespace admixtope {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t t : tags) h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
  return h;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform_open() {
  double u = 0.0;
  do {
    u = uniform();
  } while (u == 0.0);
  return u;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double Rng::gamma(double shape) {
  require(shape > 0.0 && std::isfinite(shape), "gamma shape must be positive");
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0, v = 0.0;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::vector<double> Rng::dirichlet(std::span<const double> alpha) {
  require(!alpha.empty(), "dirichlet needs at least one parameter");
  std::vector<double> out(alpha.size());
  if (alpha.size() == 1) {
    out[0] = 1.0;
    return out;
  }
  double total = 0.0;
  // Redraw in the (astronomically rare) event that every gamma underflows.
  do {
    total = 0.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      out[j] = gamma(alpha[j]);
      total += out[j];
    }
  } while (!(total > 0.0));
  for (double& x : out) x /= total;
  return out;
}

int Rng::categorical(std::span<const double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  require(!weights.empty() && total > 0.0, "categorical needs positive total weight");
  const double target = uniform() * total;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (cumulative > target) return static_cast<int>(i);
  }
  // Rounding can leave target == total; fall back to the last positive weight.
  for (std::size_t i = weights.size(); i-- > 0;)
    if (weights[i] > 0.0) return static_cast<int>(i);
  return static_cast<int>(weights.size()) - 1;
}

}  // namespace admixtope
