#include <benchmark/benchmark.h>

#include "admixtope/metrics.hpp"
#include "admixtope/polytope.hpp"
#include "admixtope/rng.hpp"

namespace {

admixtope::Polytope random_hull(admixtope::Rng& rng, int d, int k) {
  std::vector<admixtope::Point> pts;
  const std::vector<double> ones(static_cast<std::size_t>(d) + 1, 1.0);
  for (int j = 0; j < k; ++j) {
    const auto w = rng.dirichlet(ones);
    pts.emplace_back(Eigen::Map<const Eigen::VectorXd>(w.data(), d + 1));
  }
  return admixtope::extreme_points(pts, true);
}

void BM_Hausdorff(benchmark::State& state) {
  admixtope::Rng rng(7);
  const int d = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const auto a = random_hull(rng, d, k), b = random_hull(rng, d, k);
  for (auto _ : state) benchmark::DoNotOptimize(admixtope::hausdorff(a, b));
}
BENCHMARK(BM_Hausdorff)->Args({2, 3})->Args({3, 5})->Args({5, 8});

void BM_MinMatching(benchmark::State& state) {
  admixtope::Rng rng(11);
  const int k = static_cast<int>(state.range(0));
  const auto a = random_hull(rng, 4, k), b = random_hull(rng, 4, k);
  for (auto _ : state) benchmark::DoNotOptimize(admixtope::min_matching(a, b));
}
BENCHMARK(BM_MinMatching)->Arg(3)->Arg(5)->Arg(7);

}  // namespace
