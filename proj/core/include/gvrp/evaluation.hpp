#pragma once

#include <span>
#include <vector>

#include "gvrp/instance.hpp"
#include "gvrp/solution.hpp"

namespace gvrp {

struct PenaltyWeights {
  double overtime = 527.0;      // per hour above T_max
  double overmileage = 430.0;   // per distance unit above D_max on a path
  double overcapacity = 195.0;  // per vehicle-hour of excess station concurrency

  PenaltyWeights scaled(double factor) const {
    return {overtime * factor, overmileage * factor, overcapacity * factor};
  }
  bool operator==(const PenaltyWeights&) const = default;
};

// How station waiting is handled during simulation.
//  - kScheduled: global first-come-first-served simulation inserts waits so no
//    station ever hosts more than eta_s refuels; over-capacity is then zero.
//  - kZeroWait: no waits; congestion is measured by the over-capacity integral.
enum class WaitMode { kScheduled, kZeroWait };

struct NodeVisit {
  NodeId node = kDepot;
  double arrival = 0.0;
  double departure = 0.0;
  double wait = 0.0;               // stations only
  double energy_on_arrival = 0.0;  // l
  double energy_on_departure = 0.0;  // L
};

struct RouteReport {
  double distance = 0.0;  // TD(r)
  double duration = 0.0;  // TM(r), arrival back at the depot
  std::vector<NodeVisit> visits;
  // Distances between consecutive full-energy points (depot or station).
  std::vector<double> path_distances;
  double overtime = 0.0;     // max{0, TM - T_max}
  double overmileage = 0.0;  // sum over paths of max{0, TD(path) - D_max}
};

// Moments of one station's zero-wait refuelling timeline.
struct AfsTimeline {
  std::vector<double> moments;  // sorted distinct event times
  std::vector<int> concurrent;  // N(q) on [q, next q)
  std::vector<double> interval; // Delta(q), 0 for the last moment
};

struct EvalReport {
  WaitMode mode = WaitMode::kZeroWait;
  std::vector<RouteReport> routes;
  // cs(s) from the zero-wait timelines, indexed by station index.
  std::vector<double> station_overcapacity;
  double total_distance = 0.0;   // TD(phi)
  double overtime = 0.0;         // summed over routes
  double overmileage = 0.0;      // summed over routes
  // Over-capacity of this mode's schedule: the zero-wait integral, or the
  // scheduled excess which is zero by construction.
  double overcapacity = 0.0;
  double zero_wait_overcapacity = 0.0;
  double penalty = 0.0;  // P(phi)
  double quality = 0.0;  // Psi(phi) = TD + P
  int used_vehicles = 0;
  bool feasible = false;
};

struct FeasibilityVerdict {
  bool depot_endpoints = true;
  bool customers_once = true;
  bool fleet = true;  // h <= M
  bool duration = true;
  bool energy = true;  // no negative energy on arrival
  bool capacity = true;         // station concurrency within eta_s
  bool feasible() const {
    return depot_endpoints && customers_once && fleet && duration && energy && capacity;
  }
};

// Satisfaction of the three penalised constraints, used for weight adaptation.
struct ConstraintFlags {
  bool duration = true;
  bool mileage = true;
  bool capacity = true;
};

// Time integral of max{0, N(t) - capacity} for refuels starting at `starts`
// and lasting `duration` each.
double overcapacity_integral(std::span<const double> starts, double duration, int capacity);

AfsTimeline build_timeline(std::span<const double> starts, double duration);
double overcapacity(const AfsTimeline& timeline, int capacity);

// Full simulation of every route. Route shapes are validated (MalformedSolution);
// customer coverage is not, so partial solutions can be evaluated.
EvalReport evaluate(const Solution& sol, const Instance& inst, const PenaltyWeights& weights,
                    WaitMode mode);

// Schedule part only, with unit weights.
EvalReport simulate_solution(const Solution& sol, const Instance& inst,
                             WaitMode mode = WaitMode::kScheduled);

double route_penalty(const RouteReport& report, const PenaltyWeights& weights, const Instance& inst);

// Zero-wait per-station timelines and their cs(s).
std::vector<AfsTimeline> station_timelines(const Solution& sol, const Instance& inst);
std::vector<double> afs_overcapacity(const Solution& sol, const Instance& inst);

double solution_penalty(const Solution& sol, const PenaltyWeights& weights, const Instance& inst,
                        WaitMode mode = WaitMode::kZeroWait);
double total_quality(const Solution& sol, const PenaltyWeights& weights, const Instance& inst,
                     WaitMode mode = WaitMode::kZeroWait);

// Checks coverage (throws MalformedSolution) and reports per-constraint flags.
FeasibilityVerdict check_feasibility(const Solution& sol, const EvalReport& report,
                                     const Instance& inst);

ConstraintFlags constraint_flags(const EvalReport& report);

}  // namespace gvrp
