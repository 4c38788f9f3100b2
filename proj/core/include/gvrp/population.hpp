#pragma once

#include <array>
#include <span>
#include <vector>

#include "gvrp/evaluation.hpp"
#include "gvrp/instance.hpp"
#include "gvrp/random.hpp"
#include "gvrp/solution.hpp"
#include "gvrp/split.hpp"

namespace gvrp {

struct PopulationParams {
  int mu = 154;        // size after survivor selection
  int lambda = 222;    // size that triggers survivor selection
  double elite = 0.5;  // el
  double close = 0.2;  // nc
};

// Per customer, its two route neighbours (stations skipped, depot included),
// stored as an ordered pair so comparisons ignore direction.
using Adjacency = std::vector<std::array<NodeId, 2>>;

Adjacency adjacency_of(const Solution& sol, const Instance& inst);

struct Individual {
  Solution solution;
  EvalReport report;     // scheduled mode under the weights current at evaluation
  bool feasible = false;
  double diversity = 0.0;  // Phi
  int fit = 1;             // rank of Psi, best = 1
  int dc = 1;              // rank of Phi, most diverse = 1
  double biased_fitness = 0.0;
  Adjacency adjacency;
  std::vector<Route> canonical;  // clone key

  double quality() const { return report.quality; }
  double distance() const { return report.total_distance; }
};

Individual make_individual(Solution sol, const Instance& inst, const PenaltyWeights& weights);

// Normalised distance in [0, 1]: per customer, the number of its two
// neighbours with no counterpart among the other solution's two neighbours,
// summed and divided by 2n.
double hamming_distance(const Adjacency& a, const Adjacency& b);
double hamming_distance(const Solution& a, const Solution& b, const Instance& inst);

class Subpopulation {
 public:
  Subpopulation(bool feasible_class, const PopulationParams& params, int customer_count);

  bool feasible_class() const { return feasible_class_; }
  const PopulationParams& params() const { return params_; }
  int customer_count() const { return customer_count_; }

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const Individual& operator[](std::size_t i) const { return members_[i]; }
  std::span<const Individual> members() const { return members_; }

  // nbE = round(el * n) capped at the current size.
  int elite_count() const;
  // n_close = round(nc * n) clamped to [1, size - 1].
  int close_count() const;

  // Adds without refreshing ranks. Throws std::invalid_argument on a
  // feasibility class mismatch.
  void add(Individual ind);
  void remove(std::size_t index);
  double distance(std::size_t i, std::size_t j) const { return proximity_[i][j]; }

  // Re-evaluates every member under new weights (feasibility is kept).
  void reevaluate(const Instance& inst, const PenaltyWeights& weights);

  // Only for update_biased_fitness.
  Individual& mutable_member(std::size_t i) { return members_[i]; }

 private:
  bool feasible_class_;
  PopulationParams params_;
  int customer_count_;
  std::vector<Individual> members_;
  std::vector<std::vector<double>> proximity_;  // pairwise Hamming distances
};

// Mean distance to the n_close nearest other members (all of them if fewer).
double diversity_contribution(const Subpopulation& sub, std::size_t index);

// Recomputes Phi, fit, dc and biased_fitness = fit + (1 - nbE/nbP) dc.
void update_biased_fitness(Subpopulation& sub);

// Two distinct members drawn from the union of both subpopulations; the lower
// biased fitness wins, then the lower Psi, then a coin flip.
const Individual& binary_tournament(const Subpopulation& feas, const Subpopulation& infeas, Rng& rng);

// OX with the slice [first, last] (0-based, inclusive) taken from p1.
GiantTour order_crossover(std::span<const NodeId> p1, std::span<const NodeId> p2, std::size_t first,
                          std::size_t last);
GiantTour order_crossover(std::span<const NodeId> p1, std::span<const NodeId> p2, Rng& rng);

// Cuts the subpopulation down to mu: clones first (the best biased fitness of
// each clone group stays), then the worst biased fitness. Ranks are refreshed
// after each of the two batches.
void select_survivors(Subpopulation& sub);

// Adds to the matching class, refreshes its ranks and runs survivor
// selection once it reaches lambda.
void insert_offspring(Individual ind, Subpopulation& feas, Subpopulation& infeas);

// One weight under a satisfaction rate in [0, 1].
double adapt_weight(double weight, double satisfaction_rate);

// Applies adapt_weight to each weight with the rates observed in `history`.
PenaltyWeights adapt_penalties(std::span<const ConstraintFlags> history, const PenaltyWeights& weights);

}  // namespace gvrp
