#include <benchmark/benchmark.h>

#include "admixtope/admixture.hpp"
#include "admixtope/gibbs.hpp"
#include "admixtope/prior.hpp"

namespace {

void BM_GibbsSweep(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  Eigen::MatrixXd th(3, 3);
  th << 0.8, 0.1, 0.1, 0.1, 0.8, 0.1, 0.1, 0.1, 0.8;
  const admixtope::AdmixtureModel model(th, admixtope::MixingLaw::symmetric_law(3), 0.02);
  admixtope::Rng rng(3);
  const auto data = admixtope::sample_dataset(model, size, size, rng);
  admixtope::PriorSpec prior;
  prior.k = 3;
  prior.d = 2;
  prior.gamma = {1.0, 1.0, 1.0};
  auto s = admixtope::random_gibbs_state(data, 3, rng);
  for (auto _ : state) admixtope::gibbs_sweep(s, data, prior, rng);
  state.SetItemsProcessed(state.iterations() * size * size);
}
BENCHMARK(BM_GibbsSweep)->Arg(25)->Arg(50)->Arg(100);

void BM_PriorDraw(benchmark::State& state) {
  admixtope::PriorSpec prior;
  prior.k = 3;
  prior.d = 2;
  prior.gamma = {1.0, 1.0, 1.0};
  admixtope::Rng rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(admixtope::prior_draw(prior, rng).c0());
}
BENCHMARK(BM_PriorDraw);

}  // namespace

BENCHMARK_MAIN();
