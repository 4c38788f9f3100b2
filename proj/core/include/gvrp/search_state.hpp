#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gvrp/evaluation.hpp"
#include "gvrp/instance.hpp"
#include "gvrp/local_search.hpp"
#include "gvrp/solution.hpp"

namespace gvrp {

// Mutable local-search view of one solution in zero-wait mode.
//
// Every route keeps prefix sums (distance and travel time in both directions,
// service time, customer count), the positions of its full-energy points and
// prefix sums of per-path range excess. Any route produced by a move is a
// concatenation of at most a handful of existing segments (possibly reversed)
// and single nodes, so distance, duration and mileage penalties of the result
// are combined from those aggregates in constant time. Station congestion is
// re-integrated only for the stations the move touches.
class SearchState {
 public:
  SearchState(const Instance& inst, const Solution& sol, const PenaltyWeights& weights);

  const Instance& instance() const { return *inst_; }
  const PenaltyWeights& weights() const { return weights_; }
  void set_weights(const PenaltyWeights& weights);

  // Cached zero-wait Psi.
  double quality() const { return quality_; }
  Solution solution() const;

  // Exact zero-wait change of Psi realised by applying `m` (before station
  // pruning). Throws InvalidMove if the move is not legal here.
  double evaluate(const Move& m) const;
  // As evaluate, but may return any value >= cutoff once the move provably
  // cannot reach below cutoff. Returns nullopt for illegal moves.
  std::optional<double> evaluate_bounded(const Move& m, double cutoff) const;
  bool is_legal(const Move& m) const;
  // The solution the move produces, without station pruning.
  Solution preview(const Move& m) const;

  // Applies the move, then prunes redundant station visits on the modified
  // routes (a visit goes only if the merged path stays within D_max and Psi
  // does not increase).
  void apply(const Move& m);

  int route_of(NodeId customer) const { return route_of_[static_cast<std::size_t>(customer)]; }
  int position_of(NodeId customer) const { return pos_of_[static_cast<std::size_t>(customer)]; }
  // -1 when the customer precedes its route's first station or the route has
  // none, +1 when it follows.
  int cra(NodeId customer) const { return cra_[static_cast<std::size_t>(customer)]; }
  NodeId successor(NodeId customer) const;
  NodeId predecessor(NodeId customer) const;
  bool route_has_station(int route) const { return !routes_[static_cast<std::size_t>(route)].stations.empty(); }

  // Recomputes everything from scratch and throws std::logic_error on any
  // mismatch with the incremental bookkeeping (tolerance `tol`).
  void check_consistency(double tol = 1e-9) const;

 private:
  struct RouteData {
    std::vector<NodeId> nodes;
    std::vector<double> cum_dist, cum_dist_rev;      // size k, legs before position i
    std::vector<double> cum_travel, cum_travel_rev;  // size k
    std::vector<double> cum_service;                 // size k+1
    std::vector<int> cum_customers;                  // size k+1
    std::vector<int> cum_stations;                   // size k+1
    std::vector<int> next_full, prev_full, full_rank;  // size k
    std::vector<double> excess, excess_rev;  // prefix over paths, size (#full points)
    std::vector<int> stations;               // station positions, ascending
    double distance = 0.0;
    double duration = 0.0;
    double overmileage = 0.0;
    double contribution = 0.0;  // distance + route penalty, 0 when empty
    int customers = 0;

    double arrival(int p) const { return cum_service[static_cast<std::size_t>(p)] + cum_travel[static_cast<std::size_t>(p)]; }
  };

  struct Summary {
    double dist = 0.0;
    double time = 0.0;
    bool has_full = false;
    double head = 0.0;   // start .. first full point
    double tail = 0.0;   // last full point .. end
    double inner = 0.0;  // range excess of paths strictly between
    int customers = 0;
    int stations = 0;
    NodeId first = -1;
    NodeId last = -1;
  };

  struct Piece {
    int route = -1;  // -1: single node
    int from = 0;
    int to = 0;
    bool reversed = false;
    NodeId node = 0;
  };

  struct PieceList {
    std::array<Piece, 8> items{};
    int size = 0;
    void segment(int route, int from, int to, bool reversed = false) {
      if (from <= to) items[static_cast<std::size_t>(size++)] = {route, from, to, reversed, 0};
    }
    void node(NodeId v) { items[static_cast<std::size_t>(size++)] = {-1, 0, 0, false, v}; }
  };

  struct Plan {
    int route_a = -1;
    int route_b = -1;  // -1 for intra-route moves
    PieceList a;
    PieceList b;
  };

  struct StationArrival {
    int station = 0;  // station index
    double time = 0.0;
  };

  struct StationVisit {
    int route = 0;
    double start = 0.0;
  };

  std::optional<Plan> plan(const Move& m) const;
  std::optional<Plan> plan_open_route(const Move& m) const;
  int used_routes() const;
  Summary summarize(const PieceList& list) const;
  Summary piece_summary(const Piece& p) const;
  Summary concat(const Summary& a, const Summary& b) const;
  double contribution(const Summary& s) const;
  double excess(double path) const;
  void collect_arrivals(const PieceList& list, std::vector<StationArrival>& out) const;
  double station_delta(int route_a, int route_b, const std::vector<StationArrival>& arrivals) const;
  std::vector<NodeId> materialize(const PieceList& list) const;

  void rebuild_route(RouteData& r, std::vector<NodeId> nodes) const;
  void install_route(int route, std::vector<NodeId> nodes);
  void prune_route(int route);
  void refresh_quality();

  const Instance* inst_;
  PenaltyWeights weights_;
  std::vector<RouteData> routes_;
  std::vector<int> route_of_;
  std::vector<int> pos_of_;
  std::vector<int> cra_;
  std::vector<std::vector<StationVisit>> station_visits_;
  std::vector<double> station_cs_;
  double quality_ = 0.0;

  // Scratch buffers for evaluation; the state is single-threaded.
  mutable std::vector<StationArrival> scratch_arrivals_;
  mutable std::vector<double> scratch_starts_;
  mutable std::vector<int> scratch_stations_;
  mutable std::vector<char> scratch_marks_;
};

}  // namespace gvrp
