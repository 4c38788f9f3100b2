#include "gvrp/split.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gvrp/errors.hpp"

namespace gvrp {

void check_giant_tour(std::span<const NodeId> tour, const Instance& inst) {
  if (tour.size() != static_cast<std::size_t>(inst.customer_count())) {
    throw MalformedSolution("giant tour must list every customer once");
  }
  std::vector<bool> seen(static_cast<std::size_t>(inst.customer_count()) + 1, false);
  for (NodeId c : tour) {
    if (!inst.is_customer(c) || seen[static_cast<std::size_t>(c)]) {
      throw MalformedSolution("giant tour is not a permutation of the customers");
    }
    seen[static_cast<std::size_t>(c)] = true;
  }
}

Solution split_tmax(std::span<const NodeId> tour, const Instance& inst) {
  check_giant_tour(tour, inst);
  Solution sol;
  std::size_t next = 0;
  while (next < tour.size()) {
    Route route;
    NodeId last = kDepot;
    double elapsed = 0.0;  // departure time from `last`
    while (next < tour.size()) {
      const NodeId c = tour[next];
      const double arrive = elapsed + inst.time(last, c);
      const double leave = arrive + inst.service_time(c);
      if (leave + inst.time(c, kDepot) < inst.duration_limit()) {
        route.nodes.insert(route.nodes.end() - 1, c);
        last = c;
        elapsed = leave;
        ++next;
      } else {
        break;
      }
    }
    if (route.nodes.size() == 2) {
      throw UnsplittableCustomer(tour[next], "customer " + std::to_string(tour[next]) +
                                                 " exceeds the duration limit on its own route");
    }
    sol.routes.push_back(std::move(route));
  }
  return sol;
}

Solution split_dmax(std::span<const NodeId> tour, const Instance& inst) {
  check_giant_tour(tour, inst);
  if (inst.station_count() == 0) throw InfeasibleInstance("range split needs a station");
  const NodeId station = inst.nearest_station(kDepot);
  const double range = inst.max_range();
  Solution sol;
  std::size_t next = 0;
  while (next < tour.size()) {
    std::vector<NodeId> before;
    std::vector<NodeId> after;
    double before_dist = 0.0;  // depot .. last of `before`
    double after_dist = 0.0;   // station .. last of `after`
    while (next < tour.size()) {
      const NodeId c = tour[next];
      const NodeId tail_before = before.empty() ? kDepot : before.back();
      if (before_dist + inst.dist(tail_before, c) + inst.dist(c, station) < range) {
        before_dist += inst.dist(tail_before, c);
        before.push_back(c);
        ++next;
        continue;
      }
      const NodeId tail_after = after.empty() ? station : after.back();
      if (after_dist + inst.dist(tail_after, c) + inst.dist(c, kDepot) < range) {
        after_dist += inst.dist(tail_after, c);
        after.push_back(c);
        ++next;
        continue;
      }
      break;
    }
    if (before.empty() && after.empty()) {
      throw UnsplittableCustomer(tour[next], "customer " + std::to_string(tour[next]) +
                                                 " fits neither path around the depot's station");
    }
    Route route;
    route.nodes.clear();
    route.nodes.reserve(before.size() + after.size() + 3);
    route.nodes.push_back(kDepot);
    route.nodes.insert(route.nodes.end(), before.begin(), before.end());
    route.nodes.push_back(station);
    route.nodes.insert(route.nodes.end(), after.begin(), after.end());
    route.nodes.push_back(kDepot);
    sol.routes.push_back(std::move(route));
  }
  return sol;
}

Solution split_with_draw(std::span<const NodeId> tour, const Instance& inst, double rho) {
  return rho < 0.5 ? split_tmax(tour, inst) : split_dmax(tour, inst);
}

Solution scts(std::span<const NodeId> tour, const Instance& inst, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return split_with_draw(tour, inst, unit(rng));
}

GiantTour random_giant_tour(const Instance& inst, Rng& rng) {
  GiantTour tour(static_cast<std::size_t>(inst.customer_count()));
  std::iota(tour.begin(), tour.end(), 1);
  std::shuffle(tour.begin(), tour.end(), rng);
  return tour;
}

}  // namespace gvrp
