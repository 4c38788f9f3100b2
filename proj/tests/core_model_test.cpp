#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gvrp/errors.hpp"
#include "gvrp/evaluation.hpp"
#include "gvrp/generator.hpp"
#include "helpers.hpp"

namespace gvrp {
namespace {

using testing::loose_params;
using testing::make_instance;
using testing::naive_paths;
using testing::random_solution;

// Reference scheduler: repeatedly pick the pending station arrival that is
// earliest (then lower route, then lower position), recomputing every route
// from scratch each round. Quadratic but shares no code with the library.
struct RefVisit {
  double arrival = 0.0;
  double wait = 0.0;
};

std::vector<std::vector<RefVisit>> reference_schedule(const Solution& sol, const Instance& inst) {
  const std::size_t R = sol.routes.size();
  std::vector<std::vector<RefVisit>> out(R);
  std::vector<std::vector<double>> waits(R);
  std::vector<std::vector<bool>> decided(R);
  for (std::size_t r = 0; r < R; ++r) {
    waits[r].assign(sol.routes[r].nodes.size(), 0.0);
    decided[r].assign(sol.routes[r].nodes.size(), false);
  }
  std::vector<std::vector<double>> busy_until(
      static_cast<std::size_t>(inst.station_count()),
      std::vector<double>(static_cast<std::size_t>(inst.station_capacity()), 0.0));

  auto arrivals = [&](std::size_t r) {
    const auto& seq = sol.routes[r].nodes;
    std::vector<double> arr(seq.size(), 0.0);
    double t = 0.0;
    for (std::size_t j = 1; j < seq.size(); ++j) {
      t += inst.time(seq[j - 1], seq[j]);
      arr[j] = t;
      t += waits[r][j] + inst.service_time(seq[j]);
    }
    return arr;
  };

  for (;;) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t br = 0, bj = 0;
    for (std::size_t r = 0; r < R; ++r) {
      const auto arr = arrivals(r);
      const auto& seq = sol.routes[r].nodes;
      for (std::size_t j = 1; j < seq.size(); ++j) {
        if (!inst.is_station(seq[j]) || decided[r][j]) continue;
        if (arr[j] < best) {
          best = arr[j];
          br = r;
          bj = j;
        }
        break;  // later stations of this route depend on this one
      }
    }
    if (!std::isfinite(best)) break;
    auto& slots = busy_until[static_cast<std::size_t>(inst.station_index(sol.routes[br].nodes[bj]))];
    auto slot = std::min_element(slots.begin(), slots.end());
    const double start = std::max(best, *slot);
    waits[br][bj] = start - best;
    *slot = start + inst.refuel_time();
    decided[br][bj] = true;
  }
  for (std::size_t r = 0; r < R; ++r) {
    const auto arr = arrivals(r);
    for (std::size_t j = 0; j < arr.size(); ++j) out[r].push_back({arr[j], waits[r][j]});
  }
  return out;
}

TEST(RouteDistance, EmptyRouteIsZero) {
  const auto inst = make_instance({{3, 4}}, {{10, 0}});
  EXPECT_EQ(route_distance(Route{}, inst), 0.0);
}

TEST(RouteDistance, ThreeFourFiveLegs) {
  const auto inst = make_instance({{3, 4}}, {{10, 0}});
  EXPECT_DOUBLE_EQ(route_distance(Route({0, 1, 0}), inst), 10.0);
}

TEST(RouteDistance, MatchesPairwiseLoop) {
  const auto inst = generate_instance("m_central", 25, 7);
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<NodeId> seq{0};
    std::uniform_int_distribution<int> node(1, inst.node_count() - 1);
    for (int k = 0; k < 6; ++k) seq.push_back(node(rng));
    seq.push_back(0);
    double naive = 0.0;
    for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
      const Point a = inst.coordinate(seq[j]);
      const Point b = inst.coordinate(seq[j + 1]);
      naive += std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y));
    }
    EXPECT_NEAR(route_distance(Route(seq), inst), naive, 1e-9);
  }
}

TEST(Instance, DerivedMatrices) {
  FleetParams p = loose_params();
  p.speed = 40.0;
  p.energy_full = 160.0;
  p.consumption = 2.0;
  const auto inst = make_instance({{3, 4}, {-6, 8}}, {{1, 1}}, p);
  EXPECT_DOUBLE_EQ(inst.max_range(), 80.0);
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    EXPECT_EQ(inst.dist(i, i), 0.0);
    for (NodeId j = 0; j < inst.node_count(); ++j) {
      EXPECT_EQ(inst.dist(i, j), inst.dist(j, i));
      EXPECT_DOUBLE_EQ(inst.time(i, j), inst.dist(i, j) / 40.0);
    }
  }
}

TEST(Instance, RejectsBadParameters) {
  FleetParams p = loose_params();
  p.station_capacity = 0;
  EXPECT_THROW(make_instance({{1, 1}}, {{2, 2}}, p), std::invalid_argument);
  p = loose_params();
  p.duration_limit = 0.0;
  EXPECT_THROW(make_instance({{1, 1}}, {{2, 2}}, p), std::invalid_argument);
  EXPECT_THROW(make_instance({{1, 1}}, {}), std::invalid_argument);
}

TEST(Simulate, NoStationDurationIsTravelPlusService) {
  FleetParams p = loose_params();
  p.speed = 2.0;
  const auto inst = make_instance({{3, 4}, {6, 8}, {0, 5}}, {{50, 50}}, p, 0.5);
  const Solution sol{{Route({0, 1, 2, 3, 0})}};
  const auto rep = simulate_solution(sol, inst);
  const double travel = (5.0 + 5.0 + std::hypot(6.0, 3.0) + 5.0) / 2.0;
  EXPECT_NEAR(rep.routes[0].duration, travel + 1.5, 1e-12);
}

TEST(Simulate, AmpleCapacityMeansNoWaiting) {
  const auto base = generate_instance("m_central", 25, 4);
  const auto inst = base.with_station_capacity(base.fleet_limit());
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sol = random_solution(inst, inst.fleet_limit(), rng, 0.5);
    const auto sched = simulate_solution(sol, inst, WaitMode::kScheduled);
    const auto zw = simulate_solution(sol, inst, WaitMode::kZeroWait);
    for (std::size_t r = 0; r < sol.routes.size(); ++r) {
      for (const auto& v : sched.routes[r].visits) EXPECT_EQ(v.wait, 0.0);
      EXPECT_NEAR(sched.routes[r].duration, zw.routes[r].duration, 1e-9);
    }
  }
}

TEST(Simulate, TieAtSinglePumpGoesToLowerRoute) {
  FleetParams p = loose_params();
  p.speed = 40.0;
  p.refuel_time = 0.5;
  p.station_capacity = 1;
  const auto inst = make_instance({{40, 10}, {40, -10}}, {{40, 0}}, p);
  const NodeId s = inst.station_node(0);
  const Solution sol{{Route({0, s, 1, 0}), Route({0, s, 2, 0})}};
  const auto rep = simulate_solution(sol, inst);
  EXPECT_DOUBLE_EQ(rep.routes[0].visits[1].arrival, 1.0);
  EXPECT_DOUBLE_EQ(rep.routes[0].visits[1].wait, 0.0);
  EXPECT_DOUBLE_EQ(rep.routes[1].visits[1].arrival, 1.0);
  EXPECT_DOUBLE_EQ(rep.routes[1].visits[1].wait, 0.5);
  EXPECT_DOUBLE_EQ(rep.routes[1].visits[1].departure, 2.0);
  // The wait carries into the rest of the route.
  EXPECT_NEAR(rep.routes[1].duration - rep.routes[0].duration, 0.5, 1e-12);
  EXPECT_EQ(rep.overcapacity, 0.0);
  EXPECT_GT(rep.zero_wait_overcapacity, 0.0);
}

TEST(Simulate, MatchesReferenceScheduler) {
  for (int seed = 1; seed <= 6; ++seed) {
    const auto inst = generate_instance(seed % 2 ? "m_central" : "beijing", seed % 2 ? 25 : 200,
                                        static_cast<std::uint64_t>(seed));
    Rng rng(static_cast<std::uint64_t>(seed));
    for (int trial = 0; trial < 10; ++trial) {
      const auto sol = random_solution(inst, 6, rng, 0.6);
      const auto rep = simulate_solution(sol, inst);
      const auto ref = reference_schedule(sol, inst);
      for (std::size_t r = 0; r < sol.routes.size(); ++r) {
        for (std::size_t j = 0; j < ref[r].size(); ++j) {
          EXPECT_NEAR(rep.routes[r].visits[j].arrival, ref[r][j].arrival, 1e-9);
          EXPECT_NEAR(rep.routes[r].visits[j].wait, ref[r][j].wait, 1e-9);
        }
      }
    }
  }
}

TEST(Simulate, EnergyRecursionAndPaths) {
  const auto inst = generate_instance("s_central", 0, 2);
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sol = random_solution(inst, 3, rng, 0.4);
    const auto rep = simulate_solution(sol, inst);
    for (std::size_t r = 0; r < sol.routes.size(); ++r) {
      const auto& seq = sol.routes[r].nodes;
      const auto& v = rep.routes[r].visits;
      EXPECT_EQ(v[0].energy_on_departure, inst.energy_full());
      for (std::size_t j = 1; j < seq.size(); ++j) {
        EXPECT_NEAR(v[j].energy_on_arrival,
                    v[j - 1].energy_on_departure - inst.consumption() * inst.dist(seq[j - 1], seq[j]),
                    1e-9);
        if (inst.is_station(seq[j])) EXPECT_EQ(v[j].energy_on_departure, inst.energy_full());
      }
      const auto paths = naive_paths(sol.routes[r], inst);
      ASSERT_EQ(rep.routes[r].path_distances.size(), paths.size());
      for (std::size_t k = 0; k < paths.size(); ++k) {
        EXPECT_NEAR(rep.routes[r].path_distances[k], paths[k], 1e-9);
      }
      const double sum = std::accumulate(paths.begin(), paths.end(), 0.0);
      EXPECT_NEAR(sum, rep.routes[r].distance, 1e-9);
    }
  }
}

TEST(Simulate, Deterministic) {
  const auto inst = generate_instance("m_central", 50, 1);
  Rng rng(1);
  const auto sol = random_solution(inst, 8, rng, 0.5);
  const auto a = simulate_solution(sol, inst);
  const auto b = simulate_solution(sol, inst);
  EXPECT_EQ(a.quality, b.quality);
  for (std::size_t r = 0; r < a.routes.size(); ++r) {
    for (std::size_t j = 0; j < a.routes[r].visits.size(); ++j) {
      EXPECT_EQ(a.routes[r].visits[j].arrival, b.routes[r].visits[j].arrival);
      EXPECT_EQ(a.routes[r].visits[j].wait, b.routes[r].visits[j].wait);
    }
  }
}

TEST(RoutePenalty, FeasibleRouteIsFree) {
  const auto inst = make_instance({{3, 4}}, {{10, 0}});
  const auto rep = simulate_solution(Solution{{Route({0, 1, 0})}}, inst);
  EXPECT_EQ(route_penalty(rep.routes[0], PenaltyWeights{}, inst), 0.0);
}

TEST(RoutePenalty, OvertimeOnly) {
  FleetParams p = loose_params();
  p.duration_limit = 5.0;
  const auto inst = make_instance({{3, 4}}, {{10, 0}}, p);
  RouteReport r;
  r.duration = 8.0;
  r.path_distances = {10.0};
  EXPECT_DOUBLE_EQ(route_penalty(r, PenaltyWeights{2.0, 1.0, 1.0}, inst), 6.0);
}

TEST(RoutePenalty, SumsOverPaths) {
  FleetParams p = loose_params();
  p.energy_full = 20.0;
  const auto inst = make_instance({{3, 4}}, {{10, 0}}, p);
  RouteReport r;
  r.duration = 1.0;
  r.path_distances = {21.0, 5.0, 21.0};
  EXPECT_DOUBLE_EQ(route_penalty(r, PenaltyWeights{1.0, 5.0, 1.0}, inst), 10.0);
}

TEST(Overcapacity, DisjointWindowsAreFree) {
  const std::vector<double> starts{0.0, 1.0, 2.5};
  EXPECT_EQ(overcapacity_integral(starts, 0.5, 1), 0.0);
}

TEST(Overcapacity, OverlapIntegratesExcess) {
  const std::vector<double> starts{0.5, 1.0};
  EXPECT_DOUBLE_EQ(overcapacity_integral(starts, 1.0, 1), 0.5);
  const auto tl = build_timeline(starts, 1.0);
  EXPECT_EQ(tl.moments, (std::vector<double>{0.5, 1.0, 1.5, 2.0}));
  EXPECT_EQ(tl.concurrent, (std::vector<int>{1, 2, 1, 0}));
  EXPECT_DOUBLE_EQ(overcapacity(tl, 1), 0.5);
}

TEST(Overcapacity, CapacityAtFleetSizeIsFree) {
  const auto base = generate_instance("m_central", 50, 3);
  const auto inst = base.with_station_capacity(base.fleet_limit());
  Rng rng(2);
  const auto sol = random_solution(inst, inst.fleet_limit(), rng, 1.0);
  for (double cs : afs_overcapacity(sol, inst)) EXPECT_EQ(cs, 0.0);
}

TEST(Overcapacity, BruteForceIntegral) {
  Rng rng(4);
  std::uniform_real_distribution<double> t(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> starts(6);
    for (auto& s : starts) s = std::round(t(rng) * 8.0) / 8.0;  // force ties
    const int cap = 1 + trial % 3;
    // Sample on a fine grid aligned with the 1/8 lattice: exact for these inputs.
    double ref = 0.0;
    const double step = 1.0 / 64.0;
    for (double x = step / 2; x < 5.0; x += step) {
      int live = 0;
      for (double s : starts) live += (x >= s && x < s + 0.75) ? 1 : 0;
      ref += std::max(0, live - cap) * step;
    }
    EXPECT_NEAR(overcapacity_integral(starts, 0.75, cap), ref, 1e-9);
  }
}

// Three routes: A refuels at [10, 11], B at [10.5, 11.5] (one pump, so 0.5
// vehicle-hours of excess), C runs 3 h over the limit.
Instance penalty_instance() {
  FleetParams p = loose_params();
  p.refuel_time = 1.0;
  p.duration_limit = 21.5;
  std::vector<Point> coords{{0, 0}, {10, 0}, {5, 0}, {0, 12.25}, {10, 0}};
  return Instance::from_coordinates(3, 1, coords, {0.0, 0.5, 0.0}, p);
}

TEST(SolutionPenalty, CombinesRouteAndStationTerms) {
  const auto inst = penalty_instance();
  const NodeId s = inst.station_node(0);
  const Solution sol{{Route({0, s, 1, 0}), Route({0, 2, s, 0}), Route({0, 3, 0})}};
  const PenaltyWeights w{2.0, 1.0, 4.0};
  const auto cs = afs_overcapacity(sol, inst);
  EXPECT_DOUBLE_EQ(cs[0], 0.5);
  EXPECT_DOUBLE_EQ(solution_penalty(sol, w, inst), 8.0);
}

TEST(SolutionPenalty, FeasibleIsZero) {
  const auto inst = make_instance({{3, 4}, {5, 5}}, {{10, 0}});
  EXPECT_EQ(solution_penalty(Solution{{Route({0, 1, 2, 0})}}, PenaltyWeights{}, inst), 0.0);
}

TEST(SolutionPenalty, EqualsIndependentParts) {
  const auto inst = generate_instance("m_central", 50, 2);
  Rng rng(8);
  const PenaltyWeights w{3.0, 7.0, 11.0};
  for (int trial = 0; trial < 20; ++trial) {
    const auto sol = random_solution(inst, 5, rng, 0.5);
    double expect = 0.0;
    for (const auto& r : sol.routes) {
      const auto one = simulate_solution(Solution{{r}}, inst, WaitMode::kZeroWait);
      expect += route_penalty(one.routes[0], w, inst);
    }
    for (double cs : afs_overcapacity(sol, inst)) expect += w.overcapacity * cs;
    EXPECT_NEAR(solution_penalty(sol, w, inst), expect, 1e-9 * std::max(1.0, expect));
  }
}

TEST(TotalQuality, FeasibleEqualsDistance) {
  std::vector<double> d{0, 357.275, 1, 357.275, 0, 1, 1, 1, 0};
  FleetParams p = loose_params();
  const auto inst = Instance::from_matrices(1, 1, d, d, {0.0}, p);
  const Solution sol{{Route({0, 1, 0})}};
  EXPECT_DOUBLE_EQ(total_quality(sol, PenaltyWeights{}, inst), 714.55);
}

TEST(TotalQuality, EmptyRoutesAreZero) {
  const auto inst = make_instance({{3, 4}}, {{10, 0}});
  EXPECT_EQ(total_quality(Solution{{Route{}, Route{}}}, PenaltyWeights{}, inst), 0.0);
}

TEST(TotalQuality, DecomposesIntoDistanceAndPenalty) {
  const auto inst = generate_instance("m_central", 25, 5);
  Rng rng(6);
  const PenaltyWeights w{5.0, 2.0, 9.0};
  for (int trial = 0; trial < 20; ++trial) {
    const auto sol = random_solution(inst, 3, rng, 0.3);
    for (auto mode : {WaitMode::kZeroWait, WaitMode::kScheduled}) {
      const auto rep = evaluate(sol, inst, w, mode);
      double td = 0.0;
      for (const auto& r : sol.routes) td += route_distance(r, inst);
      EXPECT_NEAR(rep.total_distance, td, 1e-9);
      EXPECT_GE(rep.penalty, 0.0);
      EXPECT_DOUBLE_EQ(rep.quality, rep.total_distance + rep.penalty);
      EXPECT_EQ(rep.penalty == 0.0, rep.overtime == 0.0 && rep.overmileage == 0.0 &&
                                        rep.overcapacity == 0.0);
    }
  }
}

TEST(Feasibility, WithinLimits) {
  const auto inst = make_instance({{3, 4}, {5, 5}}, {{10, 0}});
  const Solution sol{{Route({0, 1, 2, 0})}};
  const auto v = check_feasibility(sol, simulate_solution(sol, inst), inst);
  EXPECT_TRUE(v.feasible());
}

TEST(Feasibility, LongPathSetsEnergyFlag) {
  FleetParams p = loose_params();
  p.energy_full = 12.0;  // route needs 5 + 2.24 + 7.07
  const auto inst = make_instance({{3, 4}, {5, 5}}, {{10, 0}}, p);
  const Solution sol{{Route({0, 1, 2, 0})}};
  const auto rep = simulate_solution(sol, inst);
  const auto v = check_feasibility(sol, rep, inst);
  EXPECT_FALSE(v.energy);
  EXPECT_TRUE(v.duration);
  EXPECT_FALSE(v.feasible());
  EXPECT_LT(rep.routes[0].visits.back().energy_on_arrival, 0.0);
}

TEST(Feasibility, TooManyRoutesSetsFleetFlag) {
  FleetParams p = loose_params();
  p.fleet_limit = 1;
  const auto inst = make_instance({{3, 4}, {5, 5}}, {{10, 0}}, p);
  const Solution sol{{Route({0, 1, 0}), Route({0, 2, 0})}};
  const auto rep = simulate_solution(sol, inst);
  EXPECT_FALSE(check_feasibility(sol, rep, inst).fleet);
  EXPECT_FALSE(rep.feasible);
}

TEST(Feasibility, StructuralErrorsThrow) {
  const auto inst = make_instance({{3, 4}, {5, 5}}, {{10, 0}});
  const Solution missing{{Route({0, 1, 0})}};
  EXPECT_THROW(check_feasibility(missing, simulate_solution(missing, inst), inst), MalformedSolution);
  const Solution twice{{Route({0, 1, 2, 1, 0})}};
  EXPECT_THROW(check_feasibility(twice, simulate_solution(twice, inst), inst), MalformedSolution);
  EXPECT_THROW(simulate_solution(Solution{{Route({0, 1, 0, 2, 0})}}, inst), MalformedSolution);
  EXPECT_THROW(simulate_solution(Solution{{Route({1, 2, 0})}}, inst), MalformedSolution);
  EXPECT_THROW(simulate_solution(Solution{{Route({0, 9, 0})}}, inst), MalformedSolution);
}

}  // namespace
}  // namespace gvrp
