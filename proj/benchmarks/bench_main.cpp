#include <benchmark/benchmark.h>

#include "rgbr/best_response.hpp"
#include "rgbr/chain.hpp"
#include "rgbr/mdp.hpp"
#include "rgbr/random.hpp"
#include "rgbr/tournament.hpp"

using namespace rgbr;

namespace {

const GameSpec kPd = validate_game(3, 0, 5, 1);

void BM_AveragePayoffs(benchmark::State& st) {
  const auto p = validate_strategy({0.8, 0.3, 0.6, 0.2});
  const auto q = validate_strategy({0.9, 0.5, 0.2, 0.1});
  for (auto _ : st) benchmark::DoNotOptimize(average_payoffs(p, q, kPd));
}
BENCHMARK(BM_AveragePayoffs);

void BM_PayoffViaStationary(benchmark::State& st) {
  const auto p = validate_strategy({0.8, 0.3, 0.6, 0.2});
  const auto q = validate_strategy({0.9, 0.5, 0.2, 0.1});
  for (auto _ : st) benchmark::DoNotOptimize(payoff_via_stationary(p, q, kPd));
}
BENCHMARK(BM_PayoffViaStationary);

void BM_PurePayoffTable(benchmark::State& st) {
  const auto q = validate_strategy({0.9, 0.5, 0.2, 0.1}, StrategyKind::CompletelyMixed);
  for (auto _ : st) benchmark::DoNotOptimize(pure_payoff_table(q, kPd));
}
BENCHMARK(BM_PurePayoffTable);

// Random completely mixed k-memory opponent for the prisoner's dilemma.
KMemoryStrategy opponent(int k) {
  Rng rng(derive_seed(42, k));
  const HistoryCodec codec(k, 2, 2);
  std::vector<std::vector<double>> table(codec.state_count());
  for (auto& row : table) {
    const double c = rng.uniform(0.01, 0.99);
    row = {c, 1 - c};
  }
  return KMemoryStrategy(k, {"c", "d"}, {"c", "d"}, std::move(table));
}

void BM_SolveAverageReward(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const MdpModel m = build_mdp(opponent(k), StageGame::prisoners_dilemma(kPd), k);
  for (auto _ : st) benchmark::DoNotOptimize(solve_average_reward(m));
  st.SetLabel(std::to_string(m.state_count()) + " states");
}
BENCHMARK(BM_SolveAverageReward)->Arg(1)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_OptimizeMixedTournament(benchmark::State& st) {
  const Population pop({{validate_strategy({0.9, 0.5, 0.2, 0.1}, StrategyKind::CompletelyMixed), 9},
                        {validate_strategy({0.4, 0.8, 0.2, 0.6}, StrategyKind::CompletelyMixed), 1}});
  for (auto _ : st) benchmark::DoNotOptimize(optimize_mixed_tournament(pop, kPd));
}
BENCHMARK(BM_OptimizeMixedTournament)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
