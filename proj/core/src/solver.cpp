#include "gvrp/solver.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <string>

#include "gvrp/local_search.hpp"
#include "gvrp/split.hpp"

namespace gvrp {

bool should_terminate(int iteration, int iterations_since_improvement, double elapsed_seconds,
                      const SolverConfig& cfg) {
  return iteration >= cfg.max_iterations || iterations_since_improvement >= cfg.max_no_improvement ||
         elapsed_seconds >= cfg.time_limit;
}

void check_instance(const Instance& inst) {
  const double tmax = inst.duration_limit();
  const double range = inst.max_range();
  for (NodeId c = 1; c <= inst.customer_count(); ++c) {
    bool ok = false;
    // Options before and after the customer: no station, or one station.
    std::vector<NodeId> sides{-1};
    for (int s = 0; s < inst.station_count(); ++s) sides.push_back(inst.station_node(s));
    for (NodeId a : sides) {
      for (NodeId b : sides) {
        std::vector<NodeId> seq{kDepot};
        if (a >= 0) seq.push_back(a);
        seq.push_back(c);
        if (b >= 0) seq.push_back(b);
        seq.push_back(kDepot);
        double path = 0.0;
        double clock = 0.0;
        bool fits = true;
        for (std::size_t i = 1; i < seq.size(); ++i) {
          path += inst.dist(seq[i - 1], seq[i]);
          clock += inst.time(seq[i - 1], seq[i]) + inst.service_time(seq[i]);
          if (!inst.is_customer(seq[i])) {
            fits = fits && path <= range;
            path = 0.0;
          }
        }
        if (fits && clock <= tmax) ok = true;
      }
    }
    if (!ok) {
      throw InfeasibleInstance("customer " + std::to_string(c) +
                               " cannot be served within the duration limit and range");
    }
  }
}

Solution decode_tour(std::span<const NodeId> tour, const Instance& inst, Rng& rng) {
  const double rho = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  try {
    return split_with_draw(tour, inst, rho);
  } catch (const Error&) {
  }
  try {
    return split_with_draw(tour, inst, rho < 0.5 ? 1.0 : 0.0);
  } catch (const Error&) {
  }
  Solution sol;
  for (NodeId c : tour) sol.routes.push_back(Route{{kDepot, c, kDepot}});
  return sol;
}

namespace {

using Clock = std::chrono::steady_clock;

double violation(const EvalReport& rep, const Instance& inst) {
  return rep.overtime + rep.overmileage + rep.overcapacity +
         std::max(0, rep.used_vehicles - inst.fleet_limit());
}

class Run {
 public:
  Run(const Instance& inst, const SolverConfig& cfg, const TraceSink& trace)
      : inst_(inst),
        cfg_(cfg),
        trace_(trace),
        rng_(cfg.seed),
        neighbors_(inst),
        weights_(cfg.weights),
        feas_(true, cfg.population, inst.customer_count()),
        infeas_(false, cfg.population, inst.customer_count()),
        start_(Clock::now()) {}

  RunResult execute() {
    check_instance(inst_);
    const int initial = 2 * cfg_.population.mu;
    for (int i = 0; i < initial; ++i) {
      const GiantTour tour = random_giant_tour(inst_, rng_);
      offspring(decode_tour(tour, inst_, rng_), false);
    }

    int iteration = 0;
    int since_improvement = 0;
    while (!should_terminate(iteration, since_improvement, elapsed(), cfg_)) {
      ++iteration;
      iteration_ = iteration;
      const Individual& p1 = binary_tournament(feas_, infeas_, rng_);
      const Individual& p2 = binary_tournament(feas_, infeas_, rng_);
      const GiantTour t1 = flatten_customers(p1.solution, inst_);
      const GiantTour t2 = flatten_customers(p2.solution, inst_);
      const GiantTour child = order_crossover(t1, t2, rng_);
      const bool improved = offspring(decode_tour(child, inst_, rng_), true);
      since_improvement = improved ? 0 : since_improvement + 1;

      if (cfg_.adaptation_period > 0 && iteration % cfg_.adaptation_period == 0 && !history_.empty()) {
        const std::vector<ConstraintFlags> h(history_.begin(), history_.end());
        weights_ = adapt_penalties(h, weights_);
        infeas_.reevaluate(inst_, weights_);
        update_biased_fitness(infeas_);
      }
      if (trace_) trace_(record(iteration));
    }

    if (!best_) {
      throw NoFeasibleSolution(least_violating_, "no feasible solution found");
    }
    RunResult out;
    out.best = *best_;
    out.best_distance = best_distance_;
    out.time_to_best = time_to_best_;
    out.total_time = elapsed();
    out.iterations = iteration;
    out.best_iteration = best_iteration_;
    out.final_weights = weights_;
    return out;
  }

 private:
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  // ELS, insertion and best tracking for one decoded solution. Returns true
  // when the best feasible distance improved.
  bool offspring(const Solution& decoded, bool record_flags) {
    const ElsResult r = els(decoded, weights_, inst_, neighbors_, rng_, cfg_.repair_probability);
    if (record_flags) {
      history_.push_back(constraint_flags(evaluate(r.improved, inst_, weights_, WaitMode::kZeroWait)));
      while (static_cast<int>(history_.size()) > std::max(1, cfg_.adaptation_period)) history_.pop_front();
    }
    bool improved = consider(make_individual(r.improved, inst_, weights_));
    if (r.repair_ran && !(r.repaired == r.improved)) {
      improved = consider(make_individual(r.repaired, inst_, weights_)) || improved;
    }
    return improved;
  }

  bool consider(Individual ind) {
    bool improved = false;
    if (ind.feasible) {
      if (!best_ || ind.distance() < best_distance_ - kImprovementEpsilon) {
        best_ = ind.solution;
        best_distance_ = ind.distance();
        time_to_best_ = elapsed();
        best_iteration_ = iteration_;
        improved = true;
      }
    } else {
      const double v = violation(ind.report, inst_);
      if (least_violating_.routes.empty() || v < least_violation_) {
        least_violating_ = ind.solution;
        least_violation_ = v;
      }
    }
    insert_offspring(std::move(ind), feas_, infeas_);
    return improved;
  }

  TraceRecord record(int iteration) const {
    TraceRecord t;
    t.iteration = iteration;
    if (best_) t.best_distance = best_distance_;
    t.feasible_size = static_cast<int>(feas_.size());
    t.infeasible_size = static_cast<int>(infeas_.size());
    t.weights = weights_;
    if (!history_.empty()) {
      for (const auto& f : history_) {
        t.duration_rate += f.duration ? 1.0 : 0.0;
        t.mileage_rate += f.mileage ? 1.0 : 0.0;
        t.capacity_rate += f.capacity ? 1.0 : 0.0;
      }
      const auto n = static_cast<double>(history_.size());
      t.duration_rate /= n;
      t.mileage_rate /= n;
      t.capacity_rate /= n;
    }
    return t;
  }

  const Instance& inst_;
  const SolverConfig& cfg_;
  const TraceSink& trace_;
  Rng rng_;
  NeighborLists neighbors_;
  PenaltyWeights weights_;
  Subpopulation feas_;
  Subpopulation infeas_;
  std::deque<ConstraintFlags> history_;
  std::optional<Solution> best_;
  double best_distance_ = 0.0;
  double time_to_best_ = 0.0;
  int best_iteration_ = 0;
  int iteration_ = 0;
  Solution least_violating_;
  double least_violation_ = 0.0;
  Clock::time_point start_;
};

}  // namespace

RunResult run(const Instance& inst, const SolverConfig& cfg, const TraceSink& trace) {
  Run r(inst, cfg, trace);
  return r.execute();
}

}  // namespace gvrp
