#include <gtest/gtest.h>

#include <cmath>

#include "gvrp/errors.hpp"
#include "gvrp/evaluation.hpp"
#include "gvrp/generator.hpp"
#include "gvrp/oracle.hpp"
#include "gvrp/solver.hpp"
#include "helpers.hpp"

namespace gvrp {
namespace {

using testing::loose_params;
using testing::make_instance;

SolverConfig small_config(unsigned long long seed, int iterations = 150) {
  SolverConfig cfg;
  cfg.population.mu = 10;
  cfg.population.lambda = 16;
  cfg.max_iterations = iterations;
  cfg.max_no_improvement = iterations;
  cfg.seed = seed;
  return cfg;
}

TEST(Terminate, IterationCap) {
  const SolverConfig cfg;
  EXPECT_TRUE(should_terminate(2000, 0, 0.0, cfg));
  EXPECT_FALSE(should_terminate(1999, 0, 0.0, cfg));
}

TEST(Terminate, NoImprovementCap) {
  const SolverConfig cfg;
  EXPECT_TRUE(should_terminate(10, 300, 0.0, cfg));
  EXPECT_FALSE(should_terminate(10, 299, 0.0, cfg));
}

TEST(Terminate, TimeCap) {
  SolverConfig cfg;
  EXPECT_FALSE(should_terminate(10, 10, 1e9, cfg));
  cfg.time_limit = 5.0;
  EXPECT_TRUE(should_terminate(10, 10, 5.0, cfg));
  EXPECT_FALSE(should_terminate(10, 10, 4.9, cfg));
}

TEST(Defaults, TunedValues) {
  const SolverConfig cfg;
  EXPECT_EQ(cfg.weights, (PenaltyWeights{527.0, 430.0, 195.0}));
  EXPECT_EQ(cfg.population.mu, 154);
  EXPECT_EQ(cfg.population.lambda, 222);
  EXPECT_EQ(cfg.population.elite, 0.5);
  EXPECT_EQ(cfg.population.close, 0.2);
  EXPECT_EQ(cfg.max_iterations, 2000);
  EXPECT_EQ(cfg.max_no_improvement, 300);
  EXPECT_EQ(cfg.repair_probability, 0.5);
  EXPECT_EQ(cfg.adaptation_period, 20);
}

TEST(Run, SingleCustomer) {
  const auto inst = make_instance({{30, 40}}, {{10, 0}});
  const auto res = run(inst, small_config(1, 20));
  ASSERT_EQ(res.best.routes.size(), 1u);
  EXPECT_EQ(res.best.routes[0].nodes, (std::vector<NodeId>{0, 1, 0}));
  EXPECT_DOUBLE_EQ(res.best_distance, 100.0);
}

TEST(Run, SameSeedSameTrace) {
  const auto inst = generate_instance("m_central", 25, 3);
  std::vector<TraceRecord> a, b;
  const auto ra = run(inst, small_config(7), [&](const TraceRecord& r) { a.push_back(r); });
  const auto rb = run(inst, small_config(7), [&](const TraceRecord& r) { b.push_back(r); });
  EXPECT_EQ(ra.best, rb.best);
  EXPECT_EQ(ra.best_distance, rb.best_distance);
  EXPECT_EQ(ra.iterations, rb.iterations);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].best_distance, b[k].best_distance);
    EXPECT_EQ(a[k].feasible_size, b[k].feasible_size);
    EXPECT_EQ(a[k].infeasible_size, b[k].infeasible_size);
    EXPECT_EQ(a[k].weights, b[k].weights);
  }
}

TEST(Run, TraceInvariants) {
  const auto inst = generate_instance("m_central", 25, 4);
  const auto cfg = small_config(4, 200);
  std::vector<TraceRecord> trace;
  const auto res = run(inst, cfg, [&](const TraceRecord& r) { trace.push_back(r); });
  ASSERT_FALSE(trace.empty());
  std::optional<double> last;
  for (const auto& r : trace) {
    EXPECT_LE(r.feasible_size, cfg.population.lambda);
    EXPECT_LE(r.infeasible_size, cfg.population.lambda);
    EXPECT_GT(r.weights.overtime, 0.0);
    if (last) {
      ASSERT_TRUE(r.best_distance.has_value());
      EXPECT_LE(*r.best_distance, *last);
    }
    if (r.best_distance) last = r.best_distance;
  }
  const auto rep = evaluate(res.best, inst, cfg.weights, WaitMode::kScheduled);
  EXPECT_TRUE(rep.feasible);
  EXPECT_NO_THROW(check_structure(res.best, inst));
  EXPECT_NEAR(rep.total_distance, res.best_distance, 1e-9);
  EXPECT_EQ(*trace.back().best_distance, res.best_distance);
  EXPECT_LE(res.time_to_best, res.total_time);
}

TEST(Run, NoImprovementStopsEarly) {
  const auto inst = generate_instance("tiny", 4, 2);
  auto cfg = small_config(2, 5000);
  cfg.max_no_improvement = 30;
  const auto res = run(inst, cfg);
  EXPECT_LE(res.iterations, res.best_iteration + 30);
  EXPECT_LT(res.iterations, 5000);
}

TEST(Run, MatchesOracleOnTinyInstances) {
  int hits = 0;
  int total = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = generate_instance("tiny", 0, seed);
    const auto opt = oracle_solve(inst);
    if (!opt.solution) continue;
    ++total;
    const auto res = run(inst, small_config(seed, 100));
    hits += std::abs(res.best_distance - opt.distance) <= 1e-6 ? 1 : 0;
  }
  EXPECT_GE(hits, total - 1);
}

TEST(Run, UnservableCustomerRejected) {
  FleetParams p = loose_params();
  p.duration_limit = 10.0;
  const auto inst = make_instance({{1, 0}, {100, 0}}, {{2, 0}}, p);
  EXPECT_THROW(check_instance(inst), InfeasibleInstance);
  EXPECT_THROW(run(inst, small_config(1, 10)), InfeasibleInstance);
}

TEST(Run, NoFeasibleSolutionCarriesLeastViolating) {
  // One vehicle cannot serve both sides within the limit.
  FleetParams p = loose_params();
  p.fleet_limit = 1;
  p.duration_limit = 25.0;
  const auto inst = make_instance({{10, 0}, {-10, 0}}, {{0, 1}}, p);
  EXPECT_NO_THROW(check_instance(inst));
  try {
    run(inst, small_config(1, 20));
    FAIL() << "expected NoFeasibleSolution";
  } catch (const NoFeasibleSolution& e) {
    EXPECT_NO_THROW(check_structure(e.least_violating(), inst));
  }
}

TEST(Decode, FallsBackWhenSplitRejects) {
  // Neither split can place customer 1, so every customer gets its own route.
  FleetParams p = loose_params();
  p.duration_limit = 5.0;
  p.energy_full = 5.0;
  const auto inst = make_instance({{3, 0}, {0, 3}}, {{50, 50}}, p);
  Rng rng(1);
  const auto sol = decode_tour(GiantTour{2, 1}, inst, rng);
  EXPECT_EQ(sol, (Solution{{Route({0, 2, 0}), Route({0, 1, 0})}}));
}

}  // namespace
}  // namespace gvrp
