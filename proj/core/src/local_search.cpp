#include "gvrp/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gvrp/search_state.hpp"

namespace gvrp {

std::string_view operator_name(Operator op) {
  switch (op) {
    case Operator::kInsert: return "N1";
    case Operator::kInsertArc: return "N2";
    case Operator::kInsertReversedArc: return "N3";
    case Operator::kSwapArc: return "N4";
    case Operator::kSwap: return "N5";
    case Operator::kSwapDoubleArcs: return "N6";
    case Operator::kTwoOpt: return "N7";
    case Operator::kTwoOptStarDouble: return "N8";
    case Operator::kTwoOptStarTriple: return "N9";
  }
  return "N?";
}

int NeighborLists::granularity(int customer_count) {
  const int five_percent = static_cast<int>(std::ceil(0.05 * customer_count));
  return std::max(5, five_percent);
}

NeighborLists::NeighborLists(const Instance& inst) : NeighborLists(inst, granularity(inst.customer_count())) {}

NeighborLists::NeighborLists(const Instance& inst, int alpha) : alpha_(alpha) {
  const int n = inst.customer_count();
  lists_.resize(static_cast<std::size_t>(n) + 1);
  std::vector<NodeId> others;
  for (NodeId x = 1; x <= n; ++x) {
    others.clear();
    for (NodeId y = 1; y <= n; ++y) {
      if (y != x) others.push_back(y);
    }
    const auto keep = std::min<std::size_t>(static_cast<std::size_t>(alpha_), others.size());
    std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(keep), others.end(),
                      [&](NodeId a, NodeId b) {
                        const double da = inst.dist(x, a);
                        const double db = inst.dist(x, b);
                        return da != db ? da < db : a < b;
                      });
    lists_[static_cast<std::size_t>(x)].assign(others.begin(),
                                               others.begin() + static_cast<std::ptrdiff_t>(keep));
  }
}

namespace {

// Operators that also take y = depot: a fresh route for N1..N3, the route
// start for N7.
bool takes_depot(Operator op) {
  return op == Operator::kInsert || op == Operator::kInsertArc || op == Operator::kInsertReversedArc ||
         op == Operator::kTwoOpt;
}

}  // namespace

std::optional<ScoredMove> explore_neighborhood(const SearchState& state, Operator op,
                                               const NeighborLists& neighbors) {
  std::optional<ScoredMove> best;
  double threshold = -kImprovementEpsilon;
  const int n = state.instance().customer_count();
  for (NodeId x = 1; x <= n; ++x) {
    auto consider = [&](NodeId y) {
      const Move m{op, x, y};
      const auto d = state.evaluate_bounded(m, threshold);
      if (d && *d < threshold) {
        threshold = *d;
        best = ScoredMove{m, *d};
      }
    };
    for (NodeId y : neighbors.of(x)) consider(y);
    if (takes_depot(op)) consider(kDepot);
  }
  return best;
}

long count_candidates(const SearchState& state, Operator op, const NeighborLists& neighbors) {
  long count = 0;
  const int n = state.instance().customer_count();
  for (NodeId x = 1; x <= n; ++x) {
    for (NodeId y : neighbors.of(x)) count += state.is_legal(Move{op, x, y}) ? 1 : 0;
    if (takes_depot(op)) count += state.is_legal(Move{op, x, kDepot}) ? 1 : 0;
  }
  return count;
}

int descend(SearchState& state, const NeighborLists& neighbors) {
  int moves = 0;
  bool improved = true;
  while (improved) {
    improved = false;
    for (Operator op : kAllOperators) {
      const auto best = explore_neighborhood(state, op, neighbors);
      if (best) {
        state.apply(best->move);
        ++moves;
        improved = true;
        break;
      }
    }
  }
  return moves;
}

Solution repair(const Solution& sol, const PenaltyWeights& weights, const Instance& inst,
                const NeighborLists& neighbors) {
  SearchState state(inst, sol, weights.scaled(10.0));
  descend(state, neighbors);
  return state.solution();
}

ElsResult els(const Solution& sol, const PenaltyWeights& weights, const Instance& inst,
              const NeighborLists& neighbors, Rng& rng, double repair_probability) {
  ElsResult out;
  SearchState state(inst, sol, weights);
  out.moves = descend(state, neighbors);
  out.improved = state.solution();
  const bool feasible = evaluate(out.improved, inst, weights, WaitMode::kScheduled).feasible;
  if (!feasible && std::uniform_real_distribution<double>(0.0, 1.0)(rng) < repair_probability) {
    state.set_weights(weights.scaled(10.0));
    out.moves += descend(state, neighbors);
    out.repaired = state.solution();
    out.repair_ran = true;
  } else {
    out.repaired = out.improved;
  }
  return out;
}

Route prune_afs(const Route& route, const Instance& inst) {
  std::vector<NodeId> seq = route.nodes;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 1; p + 1 < seq.size(); ++p) {
      if (!inst.is_station(seq[p])) continue;
      double merged = inst.dist(seq[p - 1], seq[p + 1]);
      for (std::size_t a = p - 1; a > 0 && inst.is_customer(seq[a]); --a) {
        merged += inst.dist(seq[a - 1], seq[a]);
      }
      for (std::size_t b = p + 1; b + 1 < seq.size() && inst.is_customer(seq[b]); ++b) {
        merged += inst.dist(seq[b], seq[b + 1]);
      }
      if (merged <= inst.max_range()) {
        seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(p));
        changed = true;
        break;
      }
    }
  }
  return Route{std::move(seq)};
}

}  // namespace gvrp
