#include "gvrp/search_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gvrp/errors.hpp"

namespace gvrp {

SearchState::SearchState(const Instance& inst, const Solution& sol, const PenaltyWeights& weights)
    : inst_(&inst), weights_(weights) {
  const auto n = static_cast<std::size_t>(inst.customer_count());
  route_of_.assign(n + 1, -1);
  pos_of_.assign(n + 1, -1);
  cra_.assign(n + 1, -1);
  const auto s = static_cast<std::size_t>(inst.station_count());
  station_visits_.assign(s, {});
  station_cs_.assign(s, 0.0);
  scratch_marks_.assign(s, 0);

  // Spare empty slots up to the fleet limit let moves open new routes.
  routes_.resize(std::max(sol.routes.size(), static_cast<std::size_t>(std::max(0, inst.fleet_limit()))));
  for (std::size_t r = 0; r < routes_.size(); ++r) {
    if (r < sol.routes.size()) {
      check_route_shape(sol.routes[r], inst);
      install_route(static_cast<int>(r), sol.routes[r].nodes);
    } else {
      install_route(static_cast<int>(r), {kDepot, kDepot});
    }
  }
  refresh_quality();
}

void SearchState::set_weights(const PenaltyWeights& weights) {
  weights_ = weights;
  for (auto& r : routes_) rebuild_route(r, std::move(r.nodes));
  refresh_quality();
}

Solution SearchState::solution() const {
  Solution out;
  for (const auto& r : routes_) {
    if (r.customers > 0) out.routes.push_back(Route{r.nodes});
  }
  return out;
}

NodeId SearchState::successor(NodeId customer) const {
  const auto& r = routes_[static_cast<std::size_t>(route_of(customer))];
  return r.nodes[static_cast<std::size_t>(position_of(customer) + 1)];
}

NodeId SearchState::predecessor(NodeId customer) const {
  const auto& r = routes_[static_cast<std::size_t>(route_of(customer))];
  return r.nodes[static_cast<std::size_t>(position_of(customer) - 1)];
}

double SearchState::excess(double path) const { return std::max(0.0, path - inst_->max_range()); }

void SearchState::rebuild_route(RouteData& r, std::vector<NodeId> nodes) const {
  const Instance& inst = *inst_;
  int customers = 0;
  for (NodeId v : nodes) customers += inst.is_customer(v) ? 1 : 0;
  if (customers == 0) nodes = {kDepot, kDepot};
  r.nodes = std::move(nodes);
  const auto& x = r.nodes;
  const std::size_t k = x.size();

  r.cum_dist.assign(k, 0.0);
  r.cum_dist_rev.assign(k, 0.0);
  r.cum_travel.assign(k, 0.0);
  r.cum_travel_rev.assign(k, 0.0);
  r.cum_service.assign(k + 1, 0.0);
  r.cum_customers.assign(k + 1, 0);
  r.cum_stations.assign(k + 1, 0);
  r.next_full.assign(k, 0);
  r.prev_full.assign(k, 0);
  r.full_rank.assign(k, -1);
  r.stations.clear();

  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0) {
      r.cum_dist[i] = r.cum_dist[i - 1] + inst.dist(x[i - 1], x[i]);
      r.cum_dist_rev[i] = r.cum_dist_rev[i - 1] + inst.dist(x[i], x[i - 1]);
      r.cum_travel[i] = r.cum_travel[i - 1] + inst.time(x[i - 1], x[i]);
      r.cum_travel_rev[i] = r.cum_travel_rev[i - 1] + inst.time(x[i], x[i - 1]);
    }
    r.cum_service[i + 1] = r.cum_service[i] + inst.service_time(x[i]);
    r.cum_customers[i + 1] = r.cum_customers[i] + (inst.is_customer(x[i]) ? 1 : 0);
    r.cum_stations[i + 1] = r.cum_stations[i] + (inst.is_station(x[i]) ? 1 : 0);
    if (inst.is_station(x[i])) r.stations.push_back(static_cast<int>(i));
  }

  std::vector<int> full;
  for (std::size_t i = 0; i < k; ++i) {
    if (i == 0 || i + 1 == k || inst.is_station(x[i])) {
      r.full_rank[i] = static_cast<int>(full.size());
      full.push_back(static_cast<int>(i));
    }
  }
  int last = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (r.full_rank[i] >= 0) last = static_cast<int>(i);
    r.prev_full[i] = last;
  }
  last = static_cast<int>(k) - 1;
  for (std::size_t i = k; i-- > 0;) {
    if (r.full_rank[i] >= 0) last = static_cast<int>(i);
    r.next_full[i] = last;
  }
  r.excess.assign(full.size(), 0.0);
  r.excess_rev.assign(full.size(), 0.0);
  for (std::size_t j = 1; j < full.size(); ++j) {
    const auto a = static_cast<std::size_t>(full[j - 1]);
    const auto b = static_cast<std::size_t>(full[j]);
    r.excess[j] = r.excess[j - 1] + excess(r.cum_dist[b] - r.cum_dist[a]);
    r.excess_rev[j] = r.excess_rev[j - 1] + excess(r.cum_dist_rev[b] - r.cum_dist_rev[a]);
  }

  r.customers = customers;
  r.distance = r.cum_dist[k - 1];
  r.duration = r.arrival(static_cast<int>(k) - 1);
  r.overmileage = r.excess.back();
  r.contribution = customers == 0
                       ? 0.0
                       : r.distance +
                             weights_.overtime * std::max(0.0, r.duration - inst.duration_limit()) +
                             weights_.overmileage * r.overmileage;
}

void SearchState::install_route(int route, std::vector<NodeId> nodes) {
  const Instance& inst = *inst_;
  auto& r = routes_[static_cast<std::size_t>(route)];
  std::vector<int> touched;
  for (int p : r.stations) touched.push_back(inst.station_index(r.nodes[static_cast<std::size_t>(p)]));
  for (auto& visits : station_visits_) {
    std::erase_if(visits, [route](const StationVisit& v) { return v.route == route; });
  }

  rebuild_route(r, std::move(nodes));

  for (int p : r.stations) {
    const int s = inst.station_index(r.nodes[static_cast<std::size_t>(p)]);
    station_visits_[static_cast<std::size_t>(s)].push_back({route, r.arrival(p)});
    touched.push_back(s);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (int s : touched) {
    scratch_starts_.clear();
    for (const auto& v : station_visits_[static_cast<std::size_t>(s)]) scratch_starts_.push_back(v.start);
    station_cs_[static_cast<std::size_t>(s)] =
        overcapacity_integral(scratch_starts_, inst.refuel_time(), inst.station_capacity());
  }

  int first_station = -1;
  if (!r.stations.empty()) first_station = r.stations.front();
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const NodeId v = r.nodes[i];
    if (!inst.is_customer(v)) continue;
    route_of_[static_cast<std::size_t>(v)] = route;
    pos_of_[static_cast<std::size_t>(v)] = static_cast<int>(i);
    cra_[static_cast<std::size_t>(v)] =
        (first_station >= 0 && static_cast<int>(i) > first_station) ? 1 : -1;
  }
}

void SearchState::refresh_quality() {
  double q = 0.0;
  for (const auto& r : routes_) q += r.contribution;
  double cs = 0.0;
  for (double c : station_cs_) cs += c;
  quality_ = q + weights_.overcapacity * cs;
}

SearchState::Summary SearchState::piece_summary(const Piece& p) const {
  const Instance& inst = *inst_;
  Summary s;
  if (p.route < 0) {
    s.time = inst.service_time(p.node);
    s.has_full = !inst.is_customer(p.node);
    s.customers = inst.is_customer(p.node) ? 1 : 0;
    s.stations = inst.is_station(p.node) ? 1 : 0;
    s.first = s.last = p.node;
    return s;
  }
  const auto& r = routes_[static_cast<std::size_t>(p.route)];
  const auto a = static_cast<std::size_t>(p.from);
  const auto b = static_cast<std::size_t>(p.to);
  s.customers = r.cum_customers[b + 1] - r.cum_customers[a];
  s.stations = r.cum_stations[b + 1] - r.cum_stations[a];
  const double service = r.cum_service[b + 1] - r.cum_service[a];
  if (!p.reversed) {
    s.dist = r.cum_dist[b] - r.cum_dist[a];
    s.time = service + (r.cum_travel[b] - r.cum_travel[a]);
    s.first = r.nodes[a];
    s.last = r.nodes[b];
    const auto fa = static_cast<std::size_t>(r.next_full[a]);
    if (fa <= b) {
      const auto lb = static_cast<std::size_t>(r.prev_full[b]);
      s.has_full = true;
      s.head = r.cum_dist[fa] - r.cum_dist[a];
      s.tail = r.cum_dist[b] - r.cum_dist[lb];
      s.inner = r.excess[static_cast<std::size_t>(r.full_rank[lb])] -
                r.excess[static_cast<std::size_t>(r.full_rank[fa])];
    }
  } else {
    s.dist = r.cum_dist_rev[b] - r.cum_dist_rev[a];
    s.time = service + (r.cum_travel_rev[b] - r.cum_travel_rev[a]);
    s.first = r.nodes[b];
    s.last = r.nodes[a];
    const auto pf = static_cast<std::size_t>(r.prev_full[b]);
    if (pf >= a) {
      const auto nf = static_cast<std::size_t>(r.next_full[a]);
      s.has_full = true;
      s.head = r.cum_dist_rev[b] - r.cum_dist_rev[pf];
      s.tail = r.cum_dist_rev[nf] - r.cum_dist_rev[a];
      s.inner = r.excess_rev[static_cast<std::size_t>(r.full_rank[pf])] -
                r.excess_rev[static_cast<std::size_t>(r.full_rank[nf])];
    }
  }
  return s;
}

SearchState::Summary SearchState::concat(const Summary& a, const Summary& b) const {
  if (a.first < 0) return b;
  if (b.first < 0) return a;
  const double edge = inst_->dist(a.last, b.first);
  Summary s;
  s.dist = a.dist + edge + b.dist;
  s.time = a.time + inst_->time(a.last, b.first) + b.time;
  s.customers = a.customers + b.customers;
  s.stations = a.stations + b.stations;
  s.first = a.first;
  s.last = b.last;
  if (!a.has_full && !b.has_full) {
    s.has_full = false;
  } else if (!b.has_full) {
    s.has_full = true;
    s.head = a.head;
    s.inner = a.inner;
    s.tail = a.tail + edge + b.dist;
  } else if (!a.has_full) {
    s.has_full = true;
    s.head = a.dist + edge + b.head;
    s.inner = b.inner;
    s.tail = b.tail;
  } else {
    s.has_full = true;
    s.head = a.head;
    s.tail = b.tail;
    s.inner = a.inner + b.inner + excess(a.tail + edge + b.head);
  }
  return s;
}

SearchState::Summary SearchState::summarize(const PieceList& list) const {
  Summary s;
  for (int i = 0; i < list.size; ++i) s = concat(s, piece_summary(list.items[static_cast<std::size_t>(i)]));
  return s;
}

double SearchState::contribution(const Summary& s) const {
  if (s.customers == 0) return 0.0;
  const double mileage = s.has_full ? excess(s.head) + s.inner + excess(s.tail) : excess(s.dist);
  return s.dist + weights_.overtime * std::max(0.0, s.time - inst_->duration_limit()) +
         weights_.overmileage * mileage;
}

void SearchState::collect_arrivals(const PieceList& list, std::vector<StationArrival>& out) const {
  const Instance& inst = *inst_;
  double clock = 0.0;
  NodeId prev = -1;
  for (int i = 0; i < list.size; ++i) {
    const Piece& p = list.items[static_cast<std::size_t>(i)];
    const Summary s = piece_summary(p);
    if (prev >= 0) clock += inst.time(prev, s.first);
    if (s.stations > 0) {
      if (p.route < 0) {
        out.push_back({inst.station_index(p.node), clock});
      } else {
        const auto& r = routes_[static_cast<std::size_t>(p.route)];
        const auto a = static_cast<std::size_t>(p.from);
        const auto b = static_cast<std::size_t>(p.to);
        auto it = std::lower_bound(r.stations.begin(), r.stations.end(), p.from);
        for (; it != r.stations.end() && *it <= p.to; ++it) {
          const auto q = static_cast<std::size_t>(*it);
          const double offset =
              p.reversed ? (r.cum_service[b + 1] - r.cum_service[q + 1]) +
                               (r.cum_travel_rev[b] - r.cum_travel_rev[q])
                         : (r.cum_service[q] - r.cum_service[a]) + (r.cum_travel[q] - r.cum_travel[a]);
          out.push_back({inst.station_index(r.nodes[q]), clock + offset});
        }
      }
    }
    clock += s.time;
    prev = s.last;
  }
}

double SearchState::station_delta(int route_a, int route_b,
                                  const std::vector<StationArrival>& arrivals) const {
  const Instance& inst = *inst_;
  scratch_stations_.clear();
  auto mark = [&](int s) {
    if (!scratch_marks_[static_cast<std::size_t>(s)]) {
      scratch_marks_[static_cast<std::size_t>(s)] = 1;
      scratch_stations_.push_back(s);
    }
  };
  for (int route : {route_a, route_b}) {
    if (route < 0) continue;
    const auto& r = routes_[static_cast<std::size_t>(route)];
    for (int p : r.stations) mark(inst.station_index(r.nodes[static_cast<std::size_t>(p)]));
  }
  for (const auto& a : arrivals) mark(a.station);

  double delta = 0.0;
  for (int s : scratch_stations_) {
    scratch_marks_[static_cast<std::size_t>(s)] = 0;
    scratch_starts_.clear();
    for (const auto& v : station_visits_[static_cast<std::size_t>(s)]) {
      if (v.route != route_a && v.route != route_b) scratch_starts_.push_back(v.start);
    }
    for (const auto& a : arrivals) {
      if (a.station == s) scratch_starts_.push_back(a.time);
    }
    const double cs =
        overcapacity_integral(scratch_starts_, inst.refuel_time(), inst.station_capacity());
    delta += weights_.overcapacity * (cs - station_cs_[static_cast<std::size_t>(s)]);
  }
  return delta;
}

std::optional<SearchState::Plan> SearchState::plan(const Move& m) const {
  const Instance& inst = *inst_;
  const NodeId x = m.x;
  const NodeId y = m.y;
  if (y == kDepot && m.op == Operator::kTwoOpt) {
    // Head reversal: (0, first) and (x, x') become (0, x) and (first, x').
    if (!inst.is_customer(x) || route_of(x) < 0 || position_of(x) < 2) return std::nullopt;
    const int R = route_of(x);
    Plan pl;
    pl.route_a = R;
    pl.a.segment(R, 0, 0);
    pl.a.segment(R, 1, position_of(x), true);
    pl.a.segment(R, position_of(x) + 1, static_cast<int>(routes_[static_cast<std::size_t>(R)].nodes.size()) - 1);
    return pl;
  }
  if (y == kDepot) return plan_open_route(m);
  if (!inst.is_customer(x) || !inst.is_customer(y) || x == y) return std::nullopt;
  const int R = route_of(x);
  const int S = route_of(y);
  if (R < 0 || S < 0) return std::nullopt;
  const int px = position_of(x);
  const int py = position_of(y);
  const auto& rx = routes_[static_cast<std::size_t>(R)].nodes;
  const auto& ry = routes_[static_cast<std::size_t>(S)].nodes;
  const int endR = static_cast<int>(rx.size()) - 1;
  const int endS = static_cast<int>(ry.size()) - 1;
  const NodeId x2 = rx[static_cast<std::size_t>(px + 1)];
  const NodeId y2 = ry[static_cast<std::size_t>(py + 1)];
  const bool same = R == S;
  const int op = static_cast<int>(m.op);
  const bool cai = op <= 4 && !same && routes_[static_cast<std::size_t>(S)].stations.empty() &&
                   inst.station_count() > 0;

  Plan pl;
  pl.route_a = R;
  pl.route_b = same ? -1 : S;
  PieceList& A = pl.a;
  PieceList& B = pl.b;

  switch (m.op) {
    case Operator::kInsert:
      if (!same) {
        A.segment(R, 0, px - 1);
        A.segment(R, px + 1, endR);
        B.segment(S, 0, py);
        B.node(x);
        if (cai) B.node(inst.nearest_station(x));
        B.segment(S, py + 1, endS);
      } else if (py == px - 1) {
        return std::nullopt;
      } else if (py < px) {
        A.segment(R, 0, py);
        A.node(x);
        A.segment(R, py + 1, px - 1);
        A.segment(R, px + 1, endR);
      } else {
        A.segment(R, 0, px - 1);
        A.segment(R, px + 1, py);
        A.node(x);
        A.segment(R, py + 1, endR);
      }
      break;

    case Operator::kInsertArc:
    case Operator::kInsertReversedArc: {
      if (!inst.is_customer(x2) || y == x2) return std::nullopt;
      const bool rev = m.op == Operator::kInsertReversedArc;
      const NodeId first = rev ? x2 : x;
      const NodeId second = rev ? x : x2;
      if (!same) {
        A.segment(R, 0, px - 1);
        A.segment(R, px + 2, endR);
        B.segment(S, 0, py);
        B.node(first);
        B.node(second);
        if (cai) B.node(inst.nearest_station(second));
        B.segment(S, py + 1, endS);
      } else if (py == px - 1 && !rev) {
        return std::nullopt;
      } else if (py < px) {
        A.segment(R, 0, py);
        A.node(first);
        A.node(second);
        A.segment(R, py + 1, px - 1);
        A.segment(R, px + 2, endR);
      } else {
        A.segment(R, 0, px - 1);
        A.segment(R, px + 2, py);
        A.node(first);
        A.node(second);
        A.segment(R, py + 1, endR);
      }
      break;
    }

    case Operator::kSwapArc:
      if (!inst.is_customer(x2) || y == x2) return std::nullopt;
      if (!same) {
        A.segment(R, 0, px - 1);
        A.node(y);
        A.segment(R, px + 2, endR);
        B.segment(S, 0, py - 1);
        B.node(x);
        B.node(x2);
        if (cai) B.node(inst.nearest_station(x2));
        B.segment(S, py + 1, endS);
      } else if (py < px) {
        A.segment(R, 0, py - 1);
        A.node(x);
        A.node(x2);
        A.segment(R, py + 1, px - 1);
        A.node(y);
        A.segment(R, px + 2, endR);
      } else {
        A.segment(R, 0, px - 1);
        A.node(y);
        A.segment(R, px + 2, py - 1);
        A.node(x);
        A.node(x2);
        A.segment(R, py + 1, endR);
      }
      break;

    case Operator::kSwap:
      if (!same) {
        A.segment(R, 0, px - 1);
        A.node(y);
        A.segment(R, px + 1, endR);
        B.segment(S, 0, py - 1);
        B.node(x);
        B.segment(S, py + 1, endS);
      } else {
        const int a = std::min(px, py);
        const int b = std::max(px, py);
        A.segment(R, 0, a - 1);
        A.node(rx[static_cast<std::size_t>(b)]);
        A.segment(R, a + 1, b - 1);
        A.node(rx[static_cast<std::size_t>(a)]);
        A.segment(R, b + 1, endR);
      }
      break;

    case Operator::kSwapDoubleArcs:
      if (!inst.is_customer(x2) || !inst.is_customer(y2) || y == x2 || y2 == x) return std::nullopt;
      if (!same) {
        A.segment(R, 0, px - 1);
        A.node(y);
        A.node(y2);
        A.segment(R, px + 2, endR);
        B.segment(S, 0, py - 1);
        B.node(x);
        B.node(x2);
        B.segment(S, py + 2, endS);
      } else {
        const int a = std::min(px, py);
        const int b = std::max(px, py);
        A.segment(R, 0, a - 1);
        A.node(rx[static_cast<std::size_t>(b)]);
        A.node(rx[static_cast<std::size_t>(b + 1)]);
        A.segment(R, a + 2, b - 1);
        A.node(rx[static_cast<std::size_t>(a)]);
        A.node(rx[static_cast<std::size_t>(a + 1)]);
        A.segment(R, b + 2, endR);
      }
      break;

    case Operator::kTwoOpt: {
      if (!same || std::abs(px - py) < 2) return std::nullopt;
      const int a = std::min(px, py);
      const int b = std::max(px, py);
      A.segment(R, 0, a);
      A.segment(R, a + 1, b, true);
      A.segment(R, b + 1, endR);
      break;
    }

    case Operator::kTwoOptStarDouble:
      if (same) return std::nullopt;
      A.segment(R, 0, px);
      A.segment(S, 0, py, true);
      B.segment(R, px + 1, endR, true);
      B.segment(S, py + 1, endS);
      break;

    case Operator::kTwoOptStarTriple:
      if (same) return std::nullopt;
      A.segment(R, 0, px);
      A.segment(S, py + 1, endS);
      B.segment(S, 0, py);
      B.segment(R, px + 1, endR);
      break;
  }
  return pl;
}

int SearchState::used_routes() const {
  int used = 0;
  for (const auto& r : routes_) used += r.customers > 0 ? 1 : 0;
  return used;
}

std::optional<SearchState::Plan> SearchState::plan_open_route(const Move& m) const {
  const Instance& inst = *inst_;
  const NodeId x = m.x;
  if (!inst.is_customer(x) || m.op > Operator::kInsertReversedArc) return std::nullopt;
  const int R = route_of(x);
  if (R < 0 || used_routes() >= inst.fleet_limit()) return std::nullopt;
  int S = -1;
  for (std::size_t r = 0; r < routes_.size() && S < 0; ++r) {
    if (routes_[r].customers == 0) S = static_cast<int>(r);
  }
  if (S < 0) return std::nullopt;
  const auto& rx = routes_[static_cast<std::size_t>(R)];
  const int px = position_of(x);
  const int endR = static_cast<int>(rx.nodes.size()) - 1;
  const bool arc = m.op != Operator::kInsert;
  const NodeId x2 = rx.nodes[static_cast<std::size_t>(px + 1)];
  if (arc && !inst.is_customer(x2)) return std::nullopt;
  // Moving a whole route into a fresh one changes nothing useful.
  if (rx.customers == (arc ? 2 : 1)) return std::nullopt;

  Plan pl;
  pl.route_a = R;
  pl.route_b = S;
  pl.a.segment(R, 0, px - 1);
  pl.a.segment(R, arc ? px + 2 : px + 1, endR);
  pl.b.segment(S, 0, 0);
  NodeId last = x;
  if (m.op == Operator::kInsert) {
    pl.b.node(x);
  } else if (m.op == Operator::kInsertArc) {
    pl.b.node(x);
    pl.b.node(x2);
    last = x2;
  } else {
    pl.b.node(x2);
    pl.b.node(x);
  }
  if (inst.station_count() > 0) pl.b.node(inst.nearest_station(last));
  pl.b.segment(S, 1, 1);
  return pl;
}

bool SearchState::is_legal(const Move& m) const { return plan(m).has_value(); }

std::optional<double> SearchState::evaluate_bounded(const Move& m, double cutoff) const {
  const auto pl = plan(m);
  if (!pl) return std::nullopt;
  const auto& ra = routes_[static_cast<std::size_t>(pl->route_a)];
  const Summary sa = summarize(pl->a);
  double delta = contribution(sa) - ra.contribution;
  bool stations = !ra.stations.empty() || (sa.customers > 0 && sa.stations > 0);
  Summary sb;
  if (pl->route_b >= 0) {
    const auto& rb = routes_[static_cast<std::size_t>(pl->route_b)];
    sb = summarize(pl->b);
    delta += contribution(sb) - rb.contribution;
    stations = stations || !rb.stations.empty() || (sb.customers > 0 && sb.stations > 0);
  }
  if (!stations) return delta;

  scratch_arrivals_.clear();
  if (sa.customers > 0 && sa.stations > 0) collect_arrivals(pl->a, scratch_arrivals_);
  if (pl->route_b >= 0 && sb.customers > 0 && sb.stations > 0) {
    collect_arrivals(pl->b, scratch_arrivals_);
  }

  if (cutoff < std::numeric_limits<double>::infinity()) {
    // Over-capacity can at best drop to zero on every touched station.
    double old_cs = 0.0;
    const Instance& inst = *inst_;
    scratch_stations_.clear();
    auto add = [&](int s) {
      if (!scratch_marks_[static_cast<std::size_t>(s)]) {
        scratch_marks_[static_cast<std::size_t>(s)] = 1;
        scratch_stations_.push_back(s);
        old_cs += station_cs_[static_cast<std::size_t>(s)];
      }
    };
    for (int route : {pl->route_a, pl->route_b}) {
      if (route < 0) continue;
      const auto& r = routes_[static_cast<std::size_t>(route)];
      for (int p : r.stations) add(inst.station_index(r.nodes[static_cast<std::size_t>(p)]));
    }
    for (const auto& a : scratch_arrivals_) add(a.station);
    for (int s : scratch_stations_) scratch_marks_[static_cast<std::size_t>(s)] = 0;
    const double bound = delta - weights_.overcapacity * old_cs;
    if (bound >= cutoff) return bound;
  }
  return delta + station_delta(pl->route_a, pl->route_b, scratch_arrivals_);
}

double SearchState::evaluate(const Move& m) const {
  const auto d = evaluate_bounded(m, std::numeric_limits<double>::infinity());
  if (!d) {
    throw InvalidMove("illegal move " + std::string(operator_name(m.op)) + " x=" +
                      std::to_string(m.x) + " y=" + std::to_string(m.y));
  }
  return *d;
}

std::vector<NodeId> SearchState::materialize(const PieceList& list) const {
  std::vector<NodeId> out;
  for (int i = 0; i < list.size; ++i) {
    const Piece& p = list.items[static_cast<std::size_t>(i)];
    if (p.route < 0) {
      out.push_back(p.node);
      continue;
    }
    const auto& nodes = routes_[static_cast<std::size_t>(p.route)].nodes;
    if (!p.reversed) {
      for (int q = p.from; q <= p.to; ++q) out.push_back(nodes[static_cast<std::size_t>(q)]);
    } else {
      for (int q = p.to; q >= p.from; --q) out.push_back(nodes[static_cast<std::size_t>(q)]);
    }
  }
  return out;
}

Solution SearchState::preview(const Move& m) const {
  const auto pl = plan(m);
  if (!pl) throw InvalidMove("illegal move " + std::string(operator_name(m.op)));
  std::vector<std::vector<NodeId>> seqs;
  for (const auto& r : routes_) seqs.push_back(r.nodes);
  seqs[static_cast<std::size_t>(pl->route_a)] = materialize(pl->a);
  if (pl->route_b >= 0) seqs[static_cast<std::size_t>(pl->route_b)] = materialize(pl->b);
  Solution out;
  for (auto& s : seqs) {
    Route r{std::move(s)};
    if (route_has_customer(r, *inst_)) out.routes.push_back(std::move(r));
  }
  return out;
}

void SearchState::apply(const Move& m) {
  const auto pl = plan(m);
  if (!pl) throw InvalidMove("illegal move " + std::string(operator_name(m.op)));
  auto seq_a = materialize(pl->a);
  std::vector<NodeId> seq_b;
  if (pl->route_b >= 0) seq_b = materialize(pl->b);
  install_route(pl->route_a, std::move(seq_a));
  if (pl->route_b >= 0) install_route(pl->route_b, std::move(seq_b));
  prune_route(pl->route_a);
  if (pl->route_b >= 0) prune_route(pl->route_b);
  refresh_quality();
}

void SearchState::prune_route(int route) {
  const Instance& inst = *inst_;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto& r = routes_[static_cast<std::size_t>(route)];
    for (int p : r.stations) {
      const auto q = static_cast<std::size_t>(p);
      const auto pf = static_cast<std::size_t>(r.prev_full[q - 1]);
      const auto nf = static_cast<std::size_t>(r.next_full[q + 1]);
      const double merged = (r.cum_dist[q - 1] - r.cum_dist[pf]) +
                            inst.dist(r.nodes[q - 1], r.nodes[q + 1]) +
                            (r.cum_dist[nf] - r.cum_dist[q + 1]);
      if (merged > inst.max_range()) continue;

      std::vector<NodeId> candidate = r.nodes;
      candidate.erase(candidate.begin() + p);
      RouteData cand;
      rebuild_route(cand, candidate);
      scratch_arrivals_.clear();
      for (int c : cand.stations) {
        scratch_arrivals_.push_back(
            {inst.station_index(cand.nodes[static_cast<std::size_t>(c)]), cand.arrival(c)});
      }
      const double delta =
          cand.contribution - r.contribution + station_delta(route, -1, scratch_arrivals_);
      if (delta <= 0.0) {
        install_route(route, std::move(candidate));
        changed = true;
        break;
      }
    }
  }
}

void SearchState::check_consistency(double tol) const {
  auto fail = [](const std::string& what) { throw std::logic_error("search state: " + what); };
  const Solution sol = solution();
  const EvalReport rep = gvrp::evaluate(sol, *inst_, weights_, WaitMode::kZeroWait);
  if (std::abs(rep.quality - quality_) > tol * std::max(1.0, std::abs(rep.quality))) {
    fail("cached quality " + std::to_string(quality_) + " vs " + std::to_string(rep.quality));
  }
  for (std::size_t s = 0; s < station_cs_.size(); ++s) {
    if (std::abs(station_cs_[s] - rep.station_overcapacity[s]) > tol) fail("station cs");
  }
  for (std::size_t i = 0; i < routes_.size(); ++i) {
    RouteData fresh;
    rebuild_route(fresh, routes_[i].nodes);
    if (fresh.nodes != routes_[i].nodes || std::abs(fresh.contribution - routes_[i].contribution) > tol) {
      fail("route data " + std::to_string(i));
    }
    for (std::size_t p = 0; p < fresh.nodes.size(); ++p) {
      const NodeId v = fresh.nodes[p];
      if (!inst_->is_customer(v)) continue;
      if (route_of(v) != static_cast<int>(i) || position_of(v) != static_cast<int>(p)) {
        fail("lookup of customer " + std::to_string(v));
      }
      const int expect =
          (!fresh.stations.empty() && static_cast<int>(p) > fresh.stations.front()) ? 1 : -1;
      if (cra(v) != expect) fail("cra of customer " + std::to_string(v));
    }
  }
  for (NodeId v = 1; v <= inst_->customer_count(); ++v) {
    if (route_of(v) < 0) fail("customer " + std::to_string(v) + " unrouted");
  }
}

}  // namespace gvrp
