#include "gvrp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "gvrp/errors.hpp"
#include "gvrp/evaluation.hpp"

namespace gvrp {
namespace {

struct Candidate {
  double distance = 0.0;
  std::vector<NodeId> nodes;
  bool has_station = false;
};

// Zero-wait range and duration test for one route.
bool route_fits(const std::vector<NodeId>& seq, const Instance& inst, double& distance) {
  double path = 0.0;
  double clock = 0.0;
  distance = 0.0;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const double leg = inst.dist(seq[i - 1], seq[i]);
    path += leg;
    distance += leg;
    clock += inst.time(seq[i - 1], seq[i]) + inst.service_time(seq[i]);
    if (!inst.is_customer(seq[i])) {
      if (path > inst.max_range()) return false;
      path = 0.0;
    }
  }
  return clock <= inst.duration_limit();
}

class Enumerator {
 public:
  Enumerator(const Instance& inst, const OracleLimits& limits) : inst_(inst), limits_(limits) {
    const int n = inst.customer_count();
    options_.resize(std::size_t{1} << n);
    for (unsigned mask = 1; mask < (1u << n); ++mask) build_options(mask);
  }

  OracleResult solve() {
    const int n = inst_.customer_count();
    std::vector<unsigned> blocks;
    partition(0, (1u << n) - 1, blocks);
    result_.distance = best_;
    if (result_.solution) result_.distance = best_;
    return result_;
  }

 private:
  void build_options(unsigned mask) {
    std::vector<NodeId> members;
    for (int c = 1; c <= inst_.customer_count(); ++c) {
      if (mask & (1u << (c - 1))) members.push_back(c);
    }
    auto& out = options_[mask];
    std::vector<NodeId> seq;
    do {
      const int k = static_cast<int>(members.size());
      // Station visits go into the k+1 gaps around the customers.
      auto emit = [&](int gap1, NodeId st1, int gap2, NodeId st2) {
        seq.clear();
        seq.push_back(kDepot);
        for (int g = 0; g <= k; ++g) {
          if (g == gap1) seq.push_back(st1);
          if (g == gap2) seq.push_back(st2);
          if (g < k) seq.push_back(members[static_cast<std::size_t>(g)]);
        }
        seq.push_back(kDepot);
        double d = 0.0;
        if (route_fits(seq, inst_, d)) {
          out.push_back({d, seq, gap1 >= 0});
          ++result_.routes_enumerated;
        }
      };
      emit(-1, 0, -1, 0);
      const int s = inst_.station_count();
      if (limits_.max_station_visits >= 1) {
        for (int g = 0; g <= k; ++g) {
          for (int a = 0; a < s; ++a) emit(g, inst_.station_node(a), -1, 0);
        }
      }
      if (limits_.max_station_visits >= 2) {
        for (int g1 = 0; g1 <= k; ++g1) {
          for (int g2 = g1 + 1; g2 <= k; ++g2) {
            for (int a = 0; a < s; ++a) {
              for (int b = 0; b < s; ++b) emit(g1, inst_.station_node(a), g2, inst_.station_node(b));
            }
          }
        }
      }
    } while (std::next_permutation(members.begin(), members.end()));
    std::stable_sort(out.begin(), out.end(),
                     [](const Candidate& a, const Candidate& b) { return a.distance < b.distance; });
  }

  // Set partitions; the block holding the lowest remaining customer is fixed
  // first so every partition appears once.
  void partition(unsigned used, unsigned all, std::vector<unsigned>& blocks) {
    if (used == all) {
      combine(blocks);
      return;
    }
    if (static_cast<int>(blocks.size()) >= inst_.fleet_limit()) return;
    const unsigned rest = all & ~used;
    const unsigned low = rest & (~rest + 1);
    const unsigned others = rest & ~low;
    // Every subset of `others`, joined with `low`.
    for (unsigned sub = others;; sub = (sub - 1) & others) {
      const unsigned block = sub | low;
      if (!options_[block].empty()) {
        blocks.push_back(block);
        partition(used | block, all, blocks);
        blocks.pop_back();
      }
      if (sub == 0) break;
    }
  }

  void combine(const std::vector<unsigned>& blocks) {
    double bound = 0.0;
    for (unsigned b : blocks) bound += options_[b].front().distance;
    if (bound >= best_) return;
    std::vector<const Candidate*> chosen;
    pick(blocks, 0, 0.0, bound, chosen);
  }

  void pick(const std::vector<unsigned>& blocks, std::size_t i, double so_far, double remaining_bound,
            std::vector<const Candidate*>& chosen) {
    if (i == blocks.size()) {
      check(chosen, so_far);
      return;
    }
    const auto& opts = options_[blocks[i]];
    const double rest = remaining_bound - opts.front().distance;
    for (const Candidate& c : opts) {
      if (so_far + c.distance + rest >= best_) break;
      chosen.push_back(&c);
      pick(blocks, i + 1, so_far + c.distance, rest, chosen);
      chosen.pop_back();
    }
  }

  void check(const std::vector<const Candidate*>& chosen, double distance) {
    ++result_.solutions_checked;
    Solution sol;
    bool stations = false;
    for (const Candidate* c : chosen) {
      sol.routes.push_back(Route{c->nodes});
      stations = stations || c->has_station;
    }
    if (stations) {
      const EvalReport rep = evaluate(sol, inst_, PenaltyWeights{1.0, 1.0, 1.0}, WaitMode::kScheduled);
      if (!rep.feasible) return;
      distance = rep.total_distance;
    }
    if (distance < best_) {
      best_ = distance;
      result_.solution = std::move(sol);
    }
  }

  const Instance& inst_;
  OracleLimits limits_;
  std::vector<std::vector<Candidate>> options_;
  double best_ = std::numeric_limits<double>::infinity();
  OracleResult result_;
};

}  // namespace

OracleResult oracle_solve(const Instance& inst, const OracleLimits& limits) {
  if (inst.customer_count() > limits.max_customers || inst.station_count() > limits.max_stations ||
      inst.fleet_limit() > limits.max_fleet) {
    throw InstanceTooLarge("oracle handles at most " + std::to_string(limits.max_customers) +
                           " customers, " + std::to_string(limits.max_stations) + " stations and fleet " +
                           std::to_string(limits.max_fleet));
  }
  if (inst.customer_count() == 0) {
    OracleResult r;
    r.solution = Solution{};
    return r;
  }
  return Enumerator(inst, limits).solve();
}

}  // namespace gvrp
