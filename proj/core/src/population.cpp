#include "gvrp/population.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "gvrp/errors.hpp"

namespace gvrp {

Adjacency adjacency_of(const Solution& sol, const Instance& inst) {
  Adjacency adj(static_cast<std::size_t>(inst.customer_count()) + 1, {-1, -1});
  std::vector<NodeId> seq;
  for (const Route& r : sol.routes) {
    seq.clear();
    for (NodeId v : r.nodes) {
      if (!inst.is_station(v)) seq.push_back(v);
    }
    for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
      const NodeId a = seq[i - 1];
      const NodeId b = seq[i + 1];
      adj[static_cast<std::size_t>(seq[i])] = {std::min(a, b), std::max(a, b)};
    }
  }
  return adj;
}

double hamming_distance(const Adjacency& a, const Adjacency& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: size mismatch");
  if (a.size() <= 1) return 0.0;
  int missing = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    int matched = 0;
    if (x[0] == y[0]) {
      matched = 1 + (x[1] == y[1] ? 1 : 0);
    } else if (x[0] == y[1]) {
      matched = 1 + (x[1] == y[0] ? 1 : 0);
    } else {
      matched = (x[1] == y[0] || x[1] == y[1]) ? 1 : 0;
    }
    missing += 2 - matched;
  }
  return static_cast<double>(missing) / (2.0 * static_cast<double>(a.size() - 1));
}

double hamming_distance(const Solution& a, const Solution& b, const Instance& inst) {
  return hamming_distance(adjacency_of(a, inst), adjacency_of(b, inst));
}

Individual make_individual(Solution sol, const Instance& inst, const PenaltyWeights& weights) {
  Individual ind;
  ind.report = evaluate(sol, inst, weights, WaitMode::kScheduled);
  ind.feasible = ind.report.feasible;
  ind.adjacency = adjacency_of(sol, inst);
  ind.canonical = canonical_routes(sol);
  ind.solution = std::move(sol);
  return ind;
}

Subpopulation::Subpopulation(bool feasible_class, const PopulationParams& params, int customer_count)
    : feasible_class_(feasible_class), params_(params), customer_count_(customer_count) {}

int Subpopulation::elite_count() const {
  const auto e = static_cast<int>(std::lround(params_.elite * customer_count_));
  return std::min(e, static_cast<int>(size()));
}

int Subpopulation::close_count() const {
  const auto c = static_cast<int>(std::lround(params_.close * customer_count_));
  const int upper = std::max(1, static_cast<int>(size()) - 1);
  return std::clamp(c, 1, upper);
}

void Subpopulation::add(Individual ind) {
  if (ind.feasible != feasible_class_) {
    throw std::invalid_argument("individual feasibility does not match subpopulation");
  }
  std::vector<double> row(members_.size() + 1, 0.0);
  for (std::size_t i = 0; i < members_.size(); ++i) {
    row[i] = hamming_distance(ind.adjacency, members_[i].adjacency);
    proximity_[i].push_back(row[i]);
  }
  proximity_.push_back(std::move(row));
  members_.push_back(std::move(ind));
}

void Subpopulation::remove(std::size_t index) {
  members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(index));
  proximity_.erase(proximity_.begin() + static_cast<std::ptrdiff_t>(index));
  for (auto& row : proximity_) row.erase(row.begin() + static_cast<std::ptrdiff_t>(index));
}

void Subpopulation::reevaluate(const Instance& inst, const PenaltyWeights& weights) {
  for (auto& m : members_) m.report = evaluate(m.solution, inst, weights, WaitMode::kScheduled);
}

double diversity_contribution(const Subpopulation& sub, std::size_t index) {
  if (sub.size() <= 1) return 0.0;
  std::vector<double> d;
  d.reserve(sub.size() - 1);
  for (std::size_t j = 0; j < sub.size(); ++j) {
    if (j != index) d.push_back(sub.distance(index, j));
  }
  const auto k = std::min(d.size(), static_cast<std::size_t>(sub.close_count()));
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k - 1), d.end());
  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) sum += d[j];
  return sum / static_cast<double>(k);
}

void update_biased_fitness(Subpopulation& sub) {
  const std::size_t size = sub.size();
  if (size == 0) return;
  for (std::size_t i = 0; i < size; ++i) sub.mutable_member(i).diversity = diversity_contribution(sub, i);

  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sub[a].quality() < sub[b].quality(); });
  for (std::size_t r = 0; r < size; ++r) sub.mutable_member(order[r]).fit = static_cast<int>(r) + 1;

  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sub[a].diversity > sub[b].diversity; });
  for (std::size_t r = 0; r < size; ++r) sub.mutable_member(order[r]).dc = static_cast<int>(r) + 1;

  const double coef =
      1.0 - static_cast<double>(sub.elite_count()) / static_cast<double>(size);
  for (std::size_t i = 0; i < size; ++i) {
    Individual& m = sub.mutable_member(i);
    m.biased_fitness = static_cast<double>(m.fit) + coef * static_cast<double>(m.dc);
  }
}

const Individual& binary_tournament(const Subpopulation& feas, const Subpopulation& infeas, Rng& rng) {
  const std::size_t total = feas.size() + infeas.size();
  if (total == 0) throw EmptyPopulation("binary tournament on an empty population");
  auto at = [&](std::size_t i) -> const Individual& {
    return i < feas.size() ? feas[i] : infeas[i - feas.size()];
  };
  if (total == 1) return at(0);
  std::uniform_int_distribution<std::size_t> pick(0, total - 1);
  const std::size_t a = pick(rng);
  std::size_t b = pick(rng);
  while (b == a) b = pick(rng);
  const Individual& x = at(a);
  const Individual& y = at(b);
  if (x.biased_fitness != y.biased_fitness) return x.biased_fitness < y.biased_fitness ? x : y;
  if (x.quality() != y.quality()) return x.quality() < y.quality() ? x : y;
  return std::bernoulli_distribution(0.5)(rng) ? x : y;
}

GiantTour order_crossover(std::span<const NodeId> p1, std::span<const NodeId> p2, std::size_t first,
                          std::size_t last) {
  const std::size_t n = p1.size();
  if (p2.size() != n || first > last || last >= n) {
    throw std::invalid_argument("order_crossover: bad parents or slice");
  }
  GiantTour child(n, -1);
  NodeId max_id = 0;
  for (NodeId v : p1) max_id = std::max(max_id, v);
  std::vector<char> used(static_cast<std::size_t>(max_id) + 1, 0);
  for (std::size_t i = first; i <= last; ++i) {
    child[i] = p1[i];
    used[static_cast<std::size_t>(p1[i])] = 1;
  }
  std::size_t out = (last + 1) % n;
  for (std::size_t k = 0; k < n; ++k) {
    const NodeId v = p2[(last + 1 + k) % n];
    if (static_cast<std::size_t>(v) < used.size() && used[static_cast<std::size_t>(v)]) continue;
    child[out] = v;
    out = (out + 1) % n;
  }
  return child;
}

GiantTour order_crossover(std::span<const NodeId> p1, std::span<const NodeId> p2, Rng& rng) {
  if (p1.empty()) return {};
  std::uniform_int_distribution<std::size_t> pick(0, p1.size() - 1);
  std::size_t a = pick(rng);
  std::size_t b = pick(rng);
  if (a > b) std::swap(a, b);
  return order_crossover(p1, p2, a, b);
}

namespace {

// Worse first: larger biased fitness, then larger Psi, then later position.
bool worse(const Subpopulation& sub, std::size_t a, std::size_t b) {
  if (sub[a].biased_fitness != sub[b].biased_fitness) return sub[a].biased_fitness > sub[b].biased_fitness;
  if (sub[a].quality() != sub[b].quality()) return sub[a].quality() > sub[b].quality();
  return a > b;
}

void remove_indices(Subpopulation& sub, std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end(), std::greater<>());
  for (std::size_t i : idx) sub.remove(i);
}

}  // namespace

void select_survivors(Subpopulation& sub) {
  const auto mu = static_cast<std::size_t>(std::max(0, sub.params().mu));
  if (sub.size() <= mu) return;
  update_biased_fitness(sub);

  // Clone batch: every member of a clone group except its best.
  std::map<std::vector<Route>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < sub.size(); ++i) groups[sub[i].canonical].push_back(i);
  std::vector<std::size_t> clones;
  for (auto& [key, members] : groups) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end(),
              [&](std::size_t a, std::size_t b) { return worse(sub, b, a); });
    clones.insert(clones.end(), members.begin() + 1, members.end());
  }
  if (!clones.empty()) {
    std::sort(clones.begin(), clones.end(), [&](std::size_t a, std::size_t b) { return worse(sub, a, b); });
    clones.resize(std::min(clones.size(), sub.size() - mu));
    remove_indices(sub, std::move(clones));
    update_biased_fitness(sub);
  }

  if (sub.size() > mu) {
    std::vector<std::size_t> order(sub.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return worse(sub, a, b); });
    order.resize(sub.size() - mu);
    remove_indices(sub, std::move(order));
    update_biased_fitness(sub);
  }
}

void insert_offspring(Individual ind, Subpopulation& feas, Subpopulation& infeas) {
  Subpopulation& target = ind.feasible ? feas : infeas;
  target.add(std::move(ind));
  update_biased_fitness(target);
  if (target.size() >= static_cast<std::size_t>(target.params().lambda)) select_survivors(target);
}

double adapt_weight(double weight, double satisfaction_rate) {
  if (satisfaction_rate <= 0.15) return weight * 1.2;
  if (satisfaction_rate >= 0.25) return weight * 0.85;
  return weight;
}

PenaltyWeights adapt_penalties(std::span<const ConstraintFlags> history, const PenaltyWeights& weights) {
  if (history.empty()) return weights;
  double duration = 0.0;
  double mileage = 0.0;
  double capacity = 0.0;
  for (const auto& f : history) {
    duration += f.duration ? 1.0 : 0.0;
    mileage += f.mileage ? 1.0 : 0.0;
    capacity += f.capacity ? 1.0 : 0.0;
  }
  const auto n = static_cast<double>(history.size());
  return {adapt_weight(weights.overtime, duration / n), adapt_weight(weights.overmileage, mileage / n),
          adapt_weight(weights.overcapacity, capacity / n)};
}

}  // namespace gvrp
