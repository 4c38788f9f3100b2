#include <benchmark/benchmark.h>

#include "gvrp/evaluation.hpp"
#include "gvrp/generator.hpp"
#include "gvrp/local_search.hpp"
#include "gvrp/population.hpp"
#include "gvrp/search_state.hpp"
#include "gvrp/split.hpp"
#include "helpers.hpp"

namespace {

using namespace gvrp;

const Instance& instance_for(int n) {
  static const Instance i50 = generate_instance("m_central", 50, 1);
  static const Instance i100 = generate_instance("m_central", 100, 1);
  static const Instance i200 = generate_instance("beijing", 200, 1);
  return n <= 50 ? i50 : n <= 100 ? i100 : i200;
}

void BM_EvaluateScheduled(benchmark::State& state) {
  const Instance& inst = instance_for(static_cast<int>(state.range(0)));
  Rng rng(1);
  const Solution sol = testing::random_solution(inst, std::min(inst.fleet_limit(), 10), rng);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(sol, inst, PenaltyWeights{}, WaitMode::kScheduled));
}
BENCHMARK(BM_EvaluateScheduled)->Arg(50)->Arg(100)->Arg(200);

void BM_MoveDelta(benchmark::State& state) {
  const Instance& inst = instance_for(static_cast<int>(state.range(0)));
  Rng rng(2);
  const SearchState st(inst, testing::random_solution(inst, std::min(inst.fleet_limit(), 10), rng), PenaltyWeights{});
  std::vector<Move> moves;
  std::uniform_int_distribution<int> op(1, kOperatorCount);
  std::uniform_int_distribution<int> cust(1, inst.customer_count());
  while (moves.size() < 1024) {
    const Move m{static_cast<Operator>(op(rng)), cust(rng), cust(rng)};
    if (st.is_legal(m)) moves.push_back(m);
  }
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(st.evaluate(moves[k++ & 1023]));
}
BENCHMARK(BM_MoveDelta)->Arg(50)->Arg(100)->Arg(200);

void BM_Scts(benchmark::State& state) {
  const Instance& inst = instance_for(static_cast<int>(state.range(0)));
  Rng rng(3);
  const GiantTour tour = random_giant_tour(inst, rng);
  for (auto _ : state) benchmark::DoNotOptimize(scts(tour, inst, rng));
}
BENCHMARK(BM_Scts)->Arg(50)->Arg(100)->Arg(200);

void BM_Els(benchmark::State& state) {
  const Instance& inst = instance_for(static_cast<int>(state.range(0)));
  const NeighborLists nb(inst);
  Rng rng(4);
  const Solution start = scts(random_giant_tour(inst, rng), inst, rng);
  for (auto _ : state) benchmark::DoNotOptimize(els(start, PenaltyWeights{}, inst, nb, rng, 0.5));
}
BENCHMARK(BM_Els)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Hamming(benchmark::State& state) {
  const Instance& inst = instance_for(static_cast<int>(state.range(0)));
  Rng rng(5);
  const Adjacency a = adjacency_of(testing::random_solution(inst, 8, rng), inst);
  const Adjacency b = adjacency_of(testing::random_solution(inst, 8, rng), inst);
  for (auto _ : state) benchmark::DoNotOptimize(hamming_distance(a, b));
}
BENCHMARK(BM_Hamming)->Arg(50)->Arg(200);

}  // namespace
BENCHMARK_MAIN();
