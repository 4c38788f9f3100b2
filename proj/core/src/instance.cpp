#include "gvrp/instance.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gvrp {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("invalid instance: ") + what);
}

void check_params(int n, int s, const FleetParams& p) {
  require(n >= 1, "customer count must be at least 1");
  require(s >= 1, "station count must be at least 1");
  require(p.fleet_limit >= 1, "fleet limit must be at least 1");
  require(p.energy_full > 0.0, "full energy must be positive");
  require(p.consumption > 0.0, "consumption rate must be positive");
  require(p.duration_limit > 0.0, "duration limit must be positive");
  require(p.refuel_time >= 0.0, "refuel time must be nonnegative");
  require(p.station_capacity >= 1, "station capacity must be at least 1");
  require(p.speed > 0.0, "speed must be positive");
}

}  // namespace

Instance Instance::from_coordinates(int customer_count, int station_count, std::vector<Point> coords,
                                    std::vector<double> service_times, const FleetParams& params) {
  check_params(customer_count, station_count, params);
  const auto nodes = static_cast<std::size_t>(customer_count + station_count + 1);
  require(coords.size() == nodes, "one coordinate per node expected");

  std::vector<double> dist(nodes * nodes, 0.0);
  std::vector<double> time(nodes * nodes, 0.0);
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t j = 0; j < nodes; ++j) {
      if (i == j) continue;
      const double d = std::hypot(coords[i].x - coords[j].x, coords[i].y - coords[j].y);
      dist[i * nodes + j] = d;
      time[i * nodes + j] = d / params.speed;
    }
  }
  return from_matrices(customer_count, station_count, std::move(dist), std::move(time),
                       std::move(service_times), params, std::move(coords));
}

Instance Instance::from_matrices(int customer_count, int station_count, std::vector<double> dist,
                                 std::vector<double> time, std::vector<double> service_times,
                                 const FleetParams& params, std::vector<Point> coords) {
  check_params(customer_count, station_count, params);
  const auto nodes = static_cast<std::size_t>(customer_count + station_count + 1);
  require(dist.size() == nodes * nodes, "distance matrix has wrong size");
  require(time.size() == nodes * nodes, "time matrix has wrong size");
  require(service_times.size() == static_cast<std::size_t>(customer_count),
          "one service time per customer expected");
  require(coords.empty() || coords.size() == nodes, "one coordinate per node expected");
  for (std::size_t i = 0; i < nodes; ++i) {
    require(dist[i * nodes + i] == 0.0, "distance diagonal must be zero");
    require(time[i * nodes + i] == 0.0, "time diagonal must be zero");
  }
  for (std::size_t k = 0; k < dist.size(); ++k) {
    require(dist[k] >= 0.0 && std::isfinite(dist[k]), "distances must be finite and nonnegative");
    require(time[k] >= 0.0 && std::isfinite(time[k]), "times must be finite and nonnegative");
  }
  for (double t : service_times) require(t >= 0.0, "service times must be nonnegative");

  Instance inst;
  inst.customer_count_ = customer_count;
  inst.station_count_ = station_count;
  inst.params_ = params;
  inst.coords_ = std::move(coords);
  inst.dist_ = std::move(dist);
  inst.time_ = std::move(time);
  inst.service_.assign(nodes, 0.0);
  for (int c = 1; c <= customer_count; ++c) {
    inst.service_[static_cast<std::size_t>(c)] = service_times[static_cast<std::size_t>(c - 1)];
  }
  inst.finish();
  return inst;
}

void Instance::finish() {
  max_range_ = params_.energy_full / params_.consumption;
  for (int k = 0; k < station_count_; ++k) {
    service_[static_cast<std::size_t>(station_node(k))] = params_.refuel_time;
  }
  nearest_station_.assign(static_cast<std::size_t>(node_count()), station_node(0));
  for (NodeId v = 0; v < node_count(); ++v) {
    NodeId best = station_node(0);
    for (int k = 1; k < station_count_; ++k) {
      const NodeId s = station_node(k);
      if (dist(v, s) < dist(v, best)) best = s;
    }
    nearest_station_[static_cast<std::size_t>(v)] = best;
  }
}

std::vector<double> Instance::customer_service_times() const {
  return {service_.begin() + 1, service_.begin() + 1 + customer_count_};
}

Instance Instance::with_station_capacity(int capacity) const {
  require(capacity >= 1, "station capacity must be at least 1");
  Instance copy = *this;
  copy.params_.station_capacity = capacity;
  return copy;
}

}  // namespace gvrp
