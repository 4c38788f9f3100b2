#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gvrp/evaluation.hpp"
#include "gvrp/instance.hpp"
#include "gvrp/random.hpp"
#include "gvrp/solution.hpp"

namespace gvrp {

// Move operators. The first four apply the conditional station insertion
// (CAI) rule: when a customer moves into a different route that has no
// station, the station nearest the node it is placed after is inserted too.
enum class Operator : int {
  kInsert = 1,             // N1: move x after y
  kInsertArc = 2,          // N2: move (x, x') after y
  kInsertReversedArc = 3,  // N3: move (x', x) after y
  kSwapArc = 4,            // N4: swap (x, x') with y
  kSwap = 5,               // N5: swap x and y
  kSwapDoubleArcs = 6,     // N6: swap (x, x') with (y, y')
  kTwoOpt = 7,             // N7: intra-route 2-opt
  kTwoOptStarDouble = 8,   // N8: (x,x'),(y,y') -> (x,y),(x',y') across routes
  kTwoOptStarTriple = 9,   // N9: (x,x'),(y,y') -> (x,y'),(x',y) across routes
};

inline constexpr int kOperatorCount = 9;
inline constexpr std::array<Operator, kOperatorCount> kAllOperators = {
    Operator::kInsert,           Operator::kInsertArc,         Operator::kInsertReversedArc,
    Operator::kSwapArc,          Operator::kSwap,              Operator::kSwapDoubleArcs,
    Operator::kTwoOpt,           Operator::kTwoOptStarDouble,  Operator::kTwoOptStarTriple};

std::string_view operator_name(Operator op);

// y = kDepot for N1..N3 moves x, or the arc, into an empty route, with
// the CAI station, as long as fewer than M routes are in use. For N7 it
// reverses the route head: (0, first), (x, x') -> (0, x), (first, x').
struct Move {
  Operator op = Operator::kInsert;
  NodeId x = 0;
  NodeId y = 0;
  bool operator==(const Move&) const = default;
};

// Candidate y's for each customer x: the alpha nearest other customers with
// alpha = max{5, ceil(5% n)}, ascending distance, ties by lower id.
class NeighborLists {
 public:
  explicit NeighborLists(const Instance& inst);
  // Explicit list length (capped at n - 1).
  NeighborLists(const Instance& inst, int alpha);

  static int granularity(int customer_count);
  int alpha() const { return alpha_; }
  std::span<const NodeId> of(NodeId customer) const {
    return lists_[static_cast<std::size_t>(customer)];
  }

 private:
  int alpha_ = 0;
  std::vector<std::vector<NodeId>> lists_;
};

// Minimum decrease of Psi accepted as an improvement.
inline constexpr double kImprovementEpsilon = 1e-9;

class SearchState;

// Best improving move of one operator over all (x, y in neighbors(x)) pairs,
// x ascending and y by neighbor rank, then y = depot for N1..N3; ties keep
// the first found.
struct ScoredMove {
  Move move;
  double delta = 0.0;
};
std::optional<ScoredMove> explore_neighborhood(const SearchState& state, Operator op,
                                               const NeighborLists& neighbors);

// Number of legal (x, y) candidates the operator would evaluate.
long count_candidates(const SearchState& state, Operator op, const NeighborLists& neighbors);

// Applies the first operator (in N1..N9 order) whose best move improves Psi
// and restarts from N1, until no operator improves. Returns accepted moves.
int descend(SearchState& state, const NeighborLists& neighbors);

struct ElsResult {
  Solution improved;  // phi_a
  Solution repaired;  // phi_b, equal to phi_a when repair did not run
  bool repair_ran = false;
  int moves = 0;
};

// Efficient local search: descent under `weights`, then, if the result is
// infeasible (scheduled mode), with probability `repair_probability` a second
// descent from it with every weight multiplied by ten.
ElsResult els(const Solution& sol, const PenaltyWeights& weights, const Instance& inst,
              const NeighborLists& neighbors, Rng& rng, double repair_probability = 0.5);

// Descent with tenfold weights; `weights` itself is left untouched.
Solution repair(const Solution& sol, const PenaltyWeights& weights, const Instance& inst,
                const NeighborLists& neighbors);

// Removes, in sequence order and until a fixpoint, every station visit whose
// removal leaves the merged path within D_max.
Route prune_afs(const Route& route, const Instance& inst);

}  // namespace gvrp
