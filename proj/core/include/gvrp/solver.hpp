#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "gvrp/errors.hpp"
#include "gvrp/evaluation.hpp"
#include "gvrp/instance.hpp"
#include "gvrp/population.hpp"
#include "gvrp/solution.hpp"

namespace gvrp {

struct SolverConfig {
  PenaltyWeights weights;  // initial weights
  PopulationParams population;
  int max_iterations = 2000;
  int max_no_improvement = 300;
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  double repair_probability = 0.5;
  int adaptation_period = 20;  // NS
  unsigned long long seed = 1;
};

// One record per generation. No timings, so traces are reproducible.
struct TraceRecord {
  int iteration = 0;
  std::optional<double> best_distance;
  int feasible_size = 0;
  int infeasible_size = 0;
  PenaltyWeights weights;
  // Share of the recent offspring satisfying each constraint.
  double duration_rate = 0.0;
  double mileage_rate = 0.0;
  double capacity_rate = 0.0;
};

using TraceSink = std::function<void(const TraceRecord&)>;

struct RunResult {
  Solution best;
  double best_distance = 0.0;
  double time_to_best = 0.0;  // seconds
  double total_time = 0.0;    // seconds
  int iterations = 0;
  int best_iteration = 0;     // 0 = found during initialisation
  PenaltyWeights final_weights;
};

// No feasible individual was produced; carries the least-violating one.
class NoFeasibleSolution : public Error {
 public:
  NoFeasibleSolution(Solution least_violating, const std::string& what)
      : Error(what), least_violating_(std::move(least_violating)) {}
  const Solution& least_violating() const { return least_violating_; }

 private:
  Solution least_violating_;
};

bool should_terminate(int iteration, int iterations_since_improvement, double elapsed_seconds,
                      const SolverConfig& cfg);

// Throws InfeasibleInstance when some customer cannot be served by any
// single-customer route with at most one station on each side within both
// the duration limit and the driving range.
void check_instance(const Instance& inst);

// Giant tour decoding: scts, falling back to the other split and then to one
// route per customer when a split rejects a customer.
Solution decode_tour(std::span<const NodeId> tour, const Instance& inst, Rng& rng);

RunResult run(const Instance& inst, const SolverConfig& cfg, const TraceSink& trace = {});

}  // namespace gvrp
