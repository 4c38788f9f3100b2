#pragma once

#include <optional>

#include "gvrp/instance.hpp"
#include "gvrp/solution.hpp"

namespace gvrp {

struct OracleLimits {
  int max_customers = 6;
  int max_stations = 2;
  int max_fleet = 4;
  int max_station_visits = 2;  // per route
};

struct OracleResult {
  std::optional<Solution> solution;  // empty when nothing is feasible
  double distance = 0.0;
  long routes_enumerated = 0;   // single-route candidates kept after the prefilter
  long solutions_checked = 0;   // complete solutions simulated
};

// Exhaustive search: every partition of the customers into at most M routes,
// every order inside a route and every placement of up to two station visits.
// Each candidate route must fit D_max on all paths and T_max without waiting;
// complete solutions are checked by the scheduled simulation. Returns the
// minimum-distance feasible solution. Throws InstanceTooLarge beyond `limits`.
OracleResult oracle_solve(const Instance& inst, const OracleLimits& limits = {});

}  // namespace gvrp
