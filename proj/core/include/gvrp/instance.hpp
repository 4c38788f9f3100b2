#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gvrp {

using NodeId = int;

inline constexpr NodeId kDepot = 0;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Scalar problem parameters shared by every node.
struct FleetParams {
  int fleet_limit = 1;          // M
  double energy_full = 1.0;     // E_f
  double consumption = 1.0;     // cr, energy per distance unit
  double duration_limit = 1.0;  // T_max, hours
  double refuel_time = 0.0;     // tau_s, hours
  int station_capacity = 1;     // eta_s, simultaneous refuels per station
  double speed = 1.0;           // distance units per hour
};

// Immutable problem data. Node 0 is the depot, 1..n are customers and
// n+1..n+s are alternative fuel stations.
class Instance {
 public:
  // Euclidean distances from coordinates, travel time = distance / speed.
  // `service_times` has one entry per customer (size n).
  static Instance from_coordinates(int customer_count, int station_count, std::vector<Point> coords,
                                   std::vector<double> service_times, const FleetParams& params);

  // Explicit row-major (n+s+1)^2 matrices; coordinates are optional (may be empty).
  static Instance from_matrices(int customer_count, int station_count, std::vector<double> dist,
                                std::vector<double> time, std::vector<double> service_times,
                                const FleetParams& params, std::vector<Point> coords = {});

  int customer_count() const { return customer_count_; }
  int station_count() const { return station_count_; }
  int node_count() const { return customer_count_ + station_count_ + 1; }

  bool is_depot(NodeId v) const { return v == kDepot; }
  bool is_customer(NodeId v) const { return v >= 1 && v <= customer_count_; }
  bool is_station(NodeId v) const { return v > customer_count_ && v < node_count(); }
  bool is_valid_node(NodeId v) const { return v >= 0 && v < node_count(); }

  NodeId station_node(int station_index) const { return customer_count_ + 1 + station_index; }
  int station_index(NodeId v) const { return v - customer_count_ - 1; }

  double dist(NodeId a, NodeId b) const { return dist_[index(a, b)]; }
  double time(NodeId a, NodeId b) const { return time_[index(a, b)]; }

  // Customer service time, tau_s for stations, 0 for the depot.
  double service_time(NodeId v) const { return service_[static_cast<std::size_t>(v)]; }

  const FleetParams& params() const { return params_; }
  int fleet_limit() const { return params_.fleet_limit; }
  double energy_full() const { return params_.energy_full; }
  double consumption() const { return params_.consumption; }
  double max_range() const { return max_range_; }
  double duration_limit() const { return params_.duration_limit; }
  double refuel_time() const { return params_.refuel_time; }
  int station_capacity() const { return params_.station_capacity; }
  double speed() const { return params_.speed; }

  bool has_coordinates() const { return !coords_.empty(); }
  std::span<const Point> coordinates() const { return coords_; }
  Point coordinate(NodeId v) const { return coords_[static_cast<std::size_t>(v)]; }

  // Per-customer service times (size n), as supplied.
  std::vector<double> customer_service_times() const;

  // Station nearest to `from`; ties go to the lower station id.
  NodeId nearest_station(NodeId from) const { return nearest_station_[static_cast<std::size_t>(from)]; }

  // Copy with a different station capacity.
  Instance with_station_capacity(int capacity) const;

 private:
  Instance() = default;
  void finish();
  std::size_t index(NodeId a, NodeId b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(node_count()) +
           static_cast<std::size_t>(b);
  }

  int customer_count_ = 0;
  int station_count_ = 0;
  FleetParams params_;
  double max_range_ = 0.0;
  std::vector<Point> coords_;
  std::vector<double> dist_;
  std::vector<double> time_;
  std::vector<double> service_;
  std::vector<NodeId> nearest_station_;
};

}  // namespace gvrp
