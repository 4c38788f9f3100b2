#include "gvrp/generator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gvrp/errors.hpp"
#include "gvrp/random.hpp"

namespace gvrp {
namespace {

double quantize(double v) { return std::round(v * 1e4) / 1e4; }

Point polar(Point centre, double radius, double angle) {
  return {quantize(centre.x + radius * std::cos(angle)), quantize(centre.y + radius * std::sin(angle))};
}

// Customers uniform over a disc around `centre`.
void scatter_disc(std::vector<Point>& coords, int count, Point centre, double radius, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(unit(rng));
    const double a = 2.0 * std::numbers::pi * unit(rng);
    coords.push_back(polar(centre, r, a));
  }
}

FleetParams base_params() {
  FleetParams p;
  p.speed = 40.0;
  p.energy_full = 160.0;
  p.consumption = 1.0;
  p.refuel_time = 0.5;
  return p;
}

Instance central(int n, int eta, int fleet, double tmax, double depot_offset, double radius, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Point station{0.0, 0.0};
  std::vector<Point> coords;
  coords.push_back(polar(station, depot_offset, 2.0 * std::numbers::pi * unit(rng)));
  scatter_disc(coords, n, station, radius, rng);
  coords.push_back(station);
  FleetParams p = base_params();
  p.station_capacity = eta;
  p.fleet_limit = fleet;
  p.duration_limit = tmax;
  return Instance::from_coordinates(n, 1, std::move(coords), std::vector<double>(static_cast<std::size_t>(n), 0.5), p);
}

}  // namespace

std::vector<std::string_view> profile_names() { return {"s_central", "m_central", "beijing", "tiny"}; }

Instance generate_instance(std::string_view profile, int customers, std::uint64_t seed) {
  Rng rng(seed);
  if (profile == "s_central") {
    if (customers != 0 && customers != 15) throw UnknownProfile("s_central has 15 customers");
    return central(15, 1, 15, 7.0, 80.0, 25.0, rng);
  }
  if (profile == "m_central") {
    const int n = customers == 0 ? 50 : customers;
    if (n == 25) return central(25, 2, 7, 7.5, 80.0, 25.0, rng);
    if (n == 50) return central(50, 3, 13, 7.5, 80.0, 25.0, rng);
    if (n == 100) return central(100, 8, 25, 7.5, 80.0, 25.0, rng);
    throw UnknownProfile("m_central takes 25, 50 or 100 customers");
  }
  if (profile == "beijing") {
    const int n = customers == 0 ? 200 : customers;
    if (n < 10) throw UnknownProfile("beijing needs at least 10 customers");
    std::uniform_real_distribution<double> box(0.0, 60.0);
    const int s = std::max(2, n / 50);
    std::vector<Point> coords;
    coords.push_back({30.0, 30.0});
    for (int i = 0; i < n + s; ++i) coords.push_back({quantize(box(rng)), quantize(box(rng))});
    FleetParams p = base_params();
    p.station_capacity = std::max(1, n / 10);
    p.fleet_limit = n;
    p.duration_limit = 8.0;
    return Instance::from_coordinates(n, s, std::move(coords),
                                      std::vector<double>(static_cast<std::size_t>(n), 0.5), p);
  }
  if (profile == "tiny") {
    const int n = customers == 0 ? 3 + static_cast<int>(seed % 4) : customers;
    if (n < 1 || n > 6) throw UnknownProfile("tiny takes 1..6 customers");
    std::uniform_real_distribution<double> area(0.0, 60.0);
    std::uniform_real_distribution<double> jitter(-5.0, 5.0);
    std::vector<Point> coords;
    coords.push_back({0.0, 0.0});
    for (int i = 0; i < n; ++i) coords.push_back({quantize(area(rng)), quantize(area(rng))});
    coords.push_back({quantize(40.0 + jitter(rng)), quantize(40.0 + jitter(rng))});
    FleetParams p = base_params();
    p.station_capacity = 1;
    p.fleet_limit = 3;
    p.duration_limit = 8.0;
    return Instance::from_coordinates(n, 1, std::move(coords),
                                      std::vector<double>(static_cast<std::size_t>(n), 0.5), p);
  }
  throw UnknownProfile("unknown profile '" + std::string(profile) + "'");
}

}  // namespace gvrp
