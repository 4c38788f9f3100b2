#include "gvrp/evaluation.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "gvrp/errors.hpp"

namespace gvrp {
namespace {

// Walks one route with no waiting. Station arrival times are appended to
// `station_starts[station_index]` when the pointer is non-null.
RouteReport simulate_zero_wait(const Route& route, const Instance& inst,
                               std::vector<std::vector<double>>* station_starts) {
  RouteReport rep;
  const auto& seq = route.nodes;
  rep.visits.resize(seq.size());
  const double full = inst.energy_full();
  const double cr = inst.consumption();

  rep.visits[0] = {kDepot, 0.0, 0.0, 0.0, full, full};
  double path = 0.0;
  for (std::size_t j = 1; j < seq.size(); ++j) {
    const NodeId prev = seq[j - 1];
    const NodeId v = seq[j];
    const double leg = inst.dist(prev, v);
    NodeVisit& visit = rep.visits[j];
    visit.node = v;
    visit.arrival = rep.visits[j - 1].departure + inst.time(prev, v);
    visit.departure = visit.arrival + inst.service_time(v);
    visit.energy_on_arrival = rep.visits[j - 1].energy_on_departure - cr * leg;
    rep.distance += leg;
    path += leg;
    if (inst.is_station(v) || j + 1 == seq.size()) {
      rep.path_distances.push_back(path);
      path = 0.0;
    }
    if (inst.is_station(v)) {
      visit.energy_on_departure = full;
      if (station_starts != nullptr) {
        (*station_starts)[static_cast<std::size_t>(inst.station_index(v))].push_back(visit.arrival);
      }
    } else {
      visit.energy_on_departure = visit.energy_on_arrival;
    }
  }
  rep.duration = rep.visits.back().arrival;
  return rep;
}

void finish_route(RouteReport& rep, const Instance& inst) {
  rep.overtime = std::max(0.0, rep.duration - inst.duration_limit());
  rep.overmileage = 0.0;
  for (double p : rep.path_distances) rep.overmileage += std::max(0.0, p - inst.max_range());
}

// Global first-come-first-served simulation: vehicles are advanced in time
// order; a vehicle reaching a station whose eta_s slots are all busy waits for
// the earliest slot to free. Ties on arrival go to the lower route index, then
// the lower position.
std::vector<RouteReport> simulate_scheduled(const Solution& sol, const Instance& inst) {
  std::vector<RouteReport> reps;
  reps.reserve(sol.routes.size());
  for (const Route& r : sol.routes) reps.push_back(simulate_zero_wait(r, inst, nullptr));

  using Event = std::tuple<double, std::size_t, std::size_t>;  // arrival, route, position
  std::priority_queue<Event, std::vector<Event>, std::greater<>> pending;

  // Advance route `r` from position `from` (departure known) to its next station.
  auto advance = [&](std::size_t r, std::size_t from) {
    const auto& seq = sol.routes[r].nodes;
    auto& visits = reps[r].visits;
    for (std::size_t j = from + 1; j < seq.size(); ++j) {
      const NodeId v = seq[j];
      visits[j].arrival = visits[j - 1].departure + inst.time(seq[j - 1], v);
      if (inst.is_station(v)) {
        pending.emplace(visits[j].arrival, r, j);
        return;
      }
      visits[j].wait = 0.0;
      visits[j].departure = visits[j].arrival + inst.service_time(v);
    }
  };

  for (std::size_t r = 0; r < sol.routes.size(); ++r) advance(r, 0);

  std::vector<std::vector<double>> slot_free(
      static_cast<std::size_t>(inst.station_count()),
      std::vector<double>(static_cast<std::size_t>(inst.station_capacity()), 0.0));
  while (!pending.empty()) {
    const auto [arrival, r, j] = pending.top();
    pending.pop();
    NodeVisit& visit = reps[r].visits[j];
    auto& slots = slot_free[static_cast<std::size_t>(inst.station_index(visit.node))];
    auto slot = std::min_element(slots.begin(), slots.end());
    const double start = std::max(arrival, *slot);
    visit.wait = start - arrival;
    visit.departure = start + inst.refuel_time();
    *slot = visit.departure;
    advance(r, j);
  }
  for (auto& rep : reps) rep.duration = rep.visits.back().arrival;
  return reps;
}

}  // namespace

double overcapacity_integral(std::span<const double> starts, double duration, int capacity) {
  if (starts.size() <= static_cast<std::size_t>(capacity) || duration <= 0.0) return 0.0;
  std::vector<double> begin(starts.begin(), starts.end());
  std::sort(begin.begin(), begin.end());
  std::vector<double> end(begin.size());
  for (std::size_t k = 0; k < begin.size(); ++k) end[k] = begin[k] + duration;

  // Merge the two sorted event streams; between consecutive distinct moments
  // the concurrency is constant.
  double total = 0.0;
  std::size_t b = 0;
  std::size_t e = 0;
  int active = 0;
  double moment = begin[0];
  while (e < end.size()) {
    const double next = (b < begin.size()) ? std::min(begin[b], end[e]) : end[e];
    if (active > capacity) total += static_cast<double>(active - capacity) * (next - moment);
    moment = next;
    while (b < begin.size() && begin[b] == moment) {
      ++active;
      ++b;
    }
    while (e < end.size() && end[e] == moment) {
      --active;
      ++e;
    }
  }
  return total;
}

AfsTimeline build_timeline(std::span<const double> starts, double duration) {
  AfsTimeline tl;
  std::vector<std::pair<double, int>> events;
  for (double s : starts) {
    events.emplace_back(s, +1);
    events.emplace_back(s + duration, -1);
  }
  std::sort(events.begin(), events.end());
  int active = 0;
  for (std::size_t k = 0; k < events.size();) {
    const double q = events[k].first;
    while (k < events.size() && events[k].first == q) active += events[k++].second;
    tl.moments.push_back(q);
    tl.concurrent.push_back(active);
  }
  tl.interval.assign(tl.moments.size(), 0.0);
  for (std::size_t k = 0; k + 1 < tl.moments.size(); ++k) {
    tl.interval[k] = tl.moments[k + 1] - tl.moments[k];
  }
  return tl;
}

double overcapacity(const AfsTimeline& timeline, int capacity) {
  double total = 0.0;
  for (std::size_t k = 0; k < timeline.moments.size(); ++k) {
    total += std::max(0, timeline.concurrent[k] - capacity) * timeline.interval[k];
  }
  return total;
}

double route_penalty(const RouteReport& report, const PenaltyWeights& weights,
                     const Instance& inst) {
  double mileage = 0.0;
  for (double p : report.path_distances) mileage += std::max(0.0, p - inst.max_range());
  return weights.overtime * std::max(0.0, report.duration - inst.duration_limit()) +
         weights.overmileage * mileage;
}

EvalReport evaluate(const Solution& sol, const Instance& inst, const PenaltyWeights& weights,
                    WaitMode mode) {
  for (const Route& r : sol.routes) check_route_shape(r, inst);

  EvalReport rep;
  rep.mode = mode;
  std::vector<std::vector<double>> zero_wait_starts(static_cast<std::size_t>(inst.station_count()));
  std::vector<RouteReport> zero_wait;
  zero_wait.reserve(sol.routes.size());
  for (const Route& r : sol.routes) zero_wait.push_back(simulate_zero_wait(r, inst, &zero_wait_starts));

  rep.station_overcapacity.resize(zero_wait_starts.size());
  for (std::size_t s = 0; s < zero_wait_starts.size(); ++s) {
    rep.station_overcapacity[s] =
        overcapacity_integral(zero_wait_starts[s], inst.refuel_time(), inst.station_capacity());
    rep.zero_wait_overcapacity += rep.station_overcapacity[s];
  }

  if (mode == WaitMode::kZeroWait) {
    rep.routes = std::move(zero_wait);
    rep.overcapacity = rep.zero_wait_overcapacity;
  } else {
    rep.routes = simulate_scheduled(sol, inst);
    std::vector<std::vector<double>> refuel_starts(static_cast<std::size_t>(inst.station_count()));
    for (const auto& r : rep.routes) {
      for (const auto& v : r.visits) {
        if (inst.is_station(v.node)) {
          refuel_starts[static_cast<std::size_t>(inst.station_index(v.node))].push_back(v.arrival +
                                                                                        v.wait);
        }
      }
    }
    for (const auto& starts : refuel_starts) {
      rep.overcapacity +=
          overcapacity_integral(starts, inst.refuel_time(), inst.station_capacity());
    }
  }

  double route_terms = 0.0;
  for (RouteReport& r : rep.routes) {
    finish_route(r, inst);
    rep.total_distance += r.distance;
    rep.overtime += r.overtime;
    rep.overmileage += r.overmileage;
    route_terms += weights.overtime * r.overtime + weights.overmileage * r.overmileage;
  }
  rep.used_vehicles = used_vehicles(sol);
  rep.penalty = route_terms + weights.overcapacity * rep.overcapacity;
  rep.quality = rep.total_distance + rep.penalty;
  rep.feasible = rep.overtime == 0.0 && rep.overmileage == 0.0 && rep.overcapacity == 0.0 &&
                 rep.used_vehicles <= inst.fleet_limit();
  return rep;
}

EvalReport simulate_solution(const Solution& sol, const Instance& inst, WaitMode mode) {
  return evaluate(sol, inst, PenaltyWeights{1.0, 1.0, 1.0}, mode);
}

std::vector<AfsTimeline> station_timelines(const Solution& sol, const Instance& inst) {
  std::vector<std::vector<double>> starts(static_cast<std::size_t>(inst.station_count()));
  for (const Route& r : sol.routes) {
    check_route_shape(r, inst);
    simulate_zero_wait(r, inst, &starts);
  }
  std::vector<AfsTimeline> out;
  out.reserve(starts.size());
  for (const auto& s : starts) out.push_back(build_timeline(s, inst.refuel_time()));
  return out;
}

std::vector<double> afs_overcapacity(const Solution& sol, const Instance& inst) {
  std::vector<double> cs;
  for (const auto& tl : station_timelines(sol, inst)) {
    cs.push_back(overcapacity(tl, inst.station_capacity()));
  }
  return cs;
}

double solution_penalty(const Solution& sol, const PenaltyWeights& weights, const Instance& inst,
                        WaitMode mode) {
  return evaluate(sol, inst, weights, mode).penalty;
}

double total_quality(const Solution& sol, const PenaltyWeights& weights, const Instance& inst,
                     WaitMode mode) {
  return evaluate(sol, inst, weights, mode).quality;
}

FeasibilityVerdict check_feasibility(const Solution& sol, const EvalReport& report,
                                     const Instance& inst) {
  check_structure(sol, inst);
  FeasibilityVerdict v;
  v.fleet = report.used_vehicles <= inst.fleet_limit();
  for (const auto& r : report.routes) {
    if (r.duration > inst.duration_limit()) v.duration = false;
    // l >= 0 along a path is equivalent to the path fitting within D_max.
    for (double p : r.path_distances) {
      if (p > inst.max_range()) v.energy = false;
    }
  }
  v.capacity = report.overcapacity == 0.0;
  return v;
}

ConstraintFlags constraint_flags(const EvalReport& report) {
  return {report.overtime == 0.0, report.overmileage == 0.0, report.overcapacity == 0.0};
}

}  // namespace gvrp
