#include <benchmark/benchmark.h>

#include "admixtope/divergence.hpp"
#include "admixtope/marginal.hpp"

namespace {

admixtope::AdmixtureModel three_topics(double shift) {
  Eigen::MatrixXd th(3, 3);
  th << 0.8 - shift, 0.1 + shift, 0.1, 0.1, 0.8, 0.1, 0.1, 0.1, 0.8;
  return {th, admixtope::MixingLaw::symmetric_law(3), 0.05};
}

void BM_MarginalMoment(benchmark::State& state) {
  const auto model = three_topics(0.0);
  std::vector<std::uint8_t> row(static_cast<std::size_t>(state.range(0)));
  for (std::size_t j = 0; j < row.size(); ++j) row[j] = static_cast<std::uint8_t>(j % 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(admixtope::marginal_loglik(model, row, admixtope::MarginalMethod::ExactMoment).logp);
}
BENCHMARK(BM_MarginalMoment)->Arg(4)->Arg(16)->Arg(64);

void BM_DivergencesExact(benchmark::State& state) {
  const auto a = three_topics(0.0), b = three_topics(0.05);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(admixtope::divergences_exact(a, b, n).V);
}
BENCHMARK(BM_DivergencesExact)->Arg(2)->Arg(4)->Arg(8);

}  // namespace
