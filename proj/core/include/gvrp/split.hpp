#pragma once

#include <span>
#include <vector>

#include "gvrp/instance.hpp"
#include "gvrp/random.hpp"
#include "gvrp/solution.hpp"

namespace gvrp {

// Permutation of all customers 1..n.
using GiantTour = std::vector<NodeId>;

// Throws MalformedSolution unless `tour` is a permutation of 1..n.
void check_giant_tour(std::span<const NodeId> tour, const Instance& inst);

// Greedy split on the duration limit: customers are appended in tour order
// while the zero-wait route duration stays strictly below T_max. No station
// visits are inserted. Throws UnsplittableCustomer if a customer cannot be
// served by a route of its own.
Solution split_tmax(std::span<const NodeId> tour, const Instance& inst);

// Greedy split on the driving range. Every route is seeded as
// (depot, minAFS, depot) with minAFS the station nearest the depot. The next
// customer is appended to the depot..minAFS path if that path stays strictly
// below D_max, otherwise to the minAFS..depot path under the same test,
// otherwise the route is closed.
Solution split_dmax(std::span<const NodeId> tour, const Instance& inst);

// rho < 0.5 selects split_tmax, otherwise split_dmax.
Solution split_with_draw(std::span<const NodeId> tour, const Instance& inst, double rho);

// Draws rho uniformly and dispatches to one of the two procedures.
Solution scts(std::span<const NodeId> tour, const Instance& inst, Rng& rng);

GiantTour random_giant_tour(const Instance& inst, Rng& rng);

}  // namespace gvrp
