#include "gvrp/solution.hpp"

#include <algorithm>
#include <sstream>

#include "gvrp/errors.hpp"

namespace gvrp {

double route_distance(const Route& route, const Instance& inst) {
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < route.nodes.size(); ++j) {
    total += inst.dist(route.nodes[j], route.nodes[j + 1]);
  }
  return total;
}

bool route_has_customer(const Route& route, const Instance& inst) {
  return std::any_of(route.nodes.begin(), route.nodes.end(),
                     [&](NodeId v) { return inst.is_customer(v); });
}

int used_vehicles(const Solution& sol) {
  return static_cast<int>(std::count_if(sol.routes.begin(), sol.routes.end(),
                                        [](const Route& r) { return r.nodes.size() > 2; }));
}

void check_route_shape(const Route& route, const Instance& inst) {
  const auto& seq = route.nodes;
  if (seq.size() < 2 || seq.front() != kDepot || seq.back() != kDepot) {
    throw MalformedSolution("route must start and end at the depot");
  }
  for (std::size_t j = 1; j + 1 < seq.size(); ++j) {
    if (!inst.is_valid_node(seq[j])) {
      throw MalformedSolution("unknown node id " + std::to_string(seq[j]));
    }
    if (seq[j] == kDepot) throw MalformedSolution("depot visited inside a route");
  }
}

void check_structure(const Solution& sol, const Instance& inst) {
  std::vector<int> seen(static_cast<std::size_t>(inst.customer_count()) + 1, 0);
  for (const Route& r : sol.routes) {
    check_route_shape(r, inst);
    for (NodeId v : r.nodes) {
      if (inst.is_customer(v)) ++seen[static_cast<std::size_t>(v)];
    }
  }
  for (NodeId c = 1; c <= inst.customer_count(); ++c) {
    const int count = seen[static_cast<std::size_t>(c)];
    if (count != 1) {
      throw MalformedSolution("customer " + std::to_string(c) + " served " + std::to_string(count) +
                              " times");
    }
  }
}

std::vector<NodeId> flatten_customers(const Solution& sol, const Instance& inst) {
  std::vector<NodeId> tour;
  tour.reserve(static_cast<std::size_t>(inst.customer_count()));
  for (const Route& r : sol.routes) {
    for (NodeId v : r.nodes) {
      if (inst.is_customer(v)) tour.push_back(v);
    }
  }
  return tour;
}

std::vector<Route> canonical_routes(const Solution& sol) {
  std::vector<Route> routes;
  for (const Route& r : sol.routes) {
    if (r.nodes.size() > 2) routes.push_back(r);
  }
  std::sort(routes.begin(), routes.end());
  return routes;
}

std::string to_string(const Solution& sol) {
  std::ostringstream out;
  for (std::size_t i = 0; i < sol.routes.size(); ++i) {
    if (i > 0) out << " | ";
    for (std::size_t j = 0; j < sol.routes[i].nodes.size(); ++j) {
      if (j > 0) out << ' ';
      out << sol.routes[i].nodes[j];
    }
  }
  return out.str();
}

}  // namespace gvrp
