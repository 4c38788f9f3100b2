#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "gvrp/instance.hpp"
#include "gvrp/random.hpp"
#include "gvrp/solution.hpp"

namespace gvrp::testing {

// Unit speed and consumption, no refuel time, limits that never bind.
inline FleetParams loose_params() {
  FleetParams p;
  p.fleet_limit = 4;
  p.duration_limit = 1000.0;
  p.energy_full = 1000.0;
  return p;
}

// Customers and stations at explicit points, depot at (0, 0).
inline Instance make_instance(std::vector<Point> customers, std::vector<Point> stations,
                              FleetParams params = loose_params(), double service = 0.0) {
  std::vector<Point> coords{{0.0, 0.0}};
  coords.insert(coords.end(), customers.begin(), customers.end());
  coords.insert(coords.end(), stations.begin(), stations.end());
  const int n = static_cast<int>(customers.size());
  return Instance::from_coordinates(n, static_cast<int>(stations.size()), std::move(coords),
                                    std::vector<double>(static_cast<std::size_t>(n), service),
                                    params);
}

// Random solution over all customers with `routes` routes (some may be
// empty) and random station visits.
inline Solution random_solution(const Instance& inst, int routes, Rng& rng,
                                double station_prob = 0.3) {
  std::vector<NodeId> perm;
  for (NodeId c = 1; c <= inst.customer_count(); ++c) perm.push_back(c);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<int> pick_route(0, routes - 1);
  std::uniform_int_distribution<int> pick_station(0, inst.station_count() - 1);
  std::bernoulli_distribution add_station(station_prob);
  Solution sol;
  sol.routes.resize(static_cast<std::size_t>(routes));
  for (auto& r : sol.routes) r.nodes = {kDepot};
  for (NodeId c : perm) {
    auto& nodes = sol.routes[static_cast<std::size_t>(pick_route(rng))].nodes;
    if (add_station(rng)) nodes.push_back(inst.station_node(pick_station(rng)));
    nodes.push_back(c);
  }
  for (auto& r : sol.routes) r.nodes.push_back(kDepot);
  return sol;
}

// Independent path split: distances between consecutive depot/station visits.
inline std::vector<double> naive_paths(const Route& r, const Instance& inst) {
  std::vector<double> out;
  double acc = 0.0;
  for (std::size_t j = 1; j < r.nodes.size(); ++j) {
    acc += inst.dist(r.nodes[j - 1], r.nodes[j]);
    if (inst.is_station(r.nodes[j]) || j + 1 == r.nodes.size()) {
      out.push_back(acc);
      acc = 0.0;
    }
  }
  return out;
}

}  // namespace gvrp::testing
