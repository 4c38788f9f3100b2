#pragma once

#include <string>
#include <vector>

#include "gvrp/instance.hpp"

namespace gvrp {

// A vehicle route: depot, interior customers and station visits, depot.
struct Route {
  std::vector<NodeId> nodes{kDepot, kDepot};

  Route() = default;
  explicit Route(std::vector<NodeId> seq) : nodes(std::move(seq)) {}

  std::size_t size() const { return nodes.size(); }
  bool operator==(const Route&) const = default;
  auto operator<=>(const Route&) const = default;
};

struct Solution {
  std::vector<Route> routes;

  bool operator==(const Solution&) const = default;
};

// Total distance of consecutive legs.
double route_distance(const Route& route, const Instance& inst);

bool route_has_customer(const Route& route, const Instance& inst);

// Routes holding at least one interior node.
int used_vehicles(const Solution& sol);

// Depot endpoints, valid node ids, no interior depot. Throws MalformedSolution.
void check_route_shape(const Route& route, const Instance& inst);

// Route shape for every route plus every customer served exactly once.
void check_structure(const Solution& sol, const Instance& inst);

// Customers in route order with stations and depots dropped.
std::vector<NodeId> flatten_customers(const Solution& sol, const Instance& inst);

// Route-order-insensitive identity used for clone detection.
std::vector<Route> canonical_routes(const Solution& sol);

// "0 3 1 0 | 0 2 0" style rendering for diagnostics.
std::string to_string(const Solution& sol);

}  // namespace gvrp
