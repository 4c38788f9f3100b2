#include "gvrp/report.hpp"

#include <cstdio>
#include <stdexcept>
#include <vector>

namespace gvrp {
namespace {

std::string num(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

double gap_percent(double distance, double bks) { return 100.0 * (distance - bks) / bks; }

Report write_report(std::span<const RunRecord> records, const BksTable& bks) {
  if (records.empty()) throw std::invalid_argument("write_report needs at least one record");
  Report rep;
  rep.runs_csv = "instance,seed,best_td,feasible,time_to_best_s,total_time_s,iterations,gap_pct\n";
  std::map<std::string, std::vector<const RunRecord*>> by_instance;
  for (const RunRecord& r : records) {
    const auto b = bks_lookup(r.instance, bks);
    rep.runs_csv += r.instance + "," + std::to_string(r.seed) + "," +
                    (r.feasible ? num(r.best_distance, 2) : std::string()) + "," + (r.feasible ? "1" : "0") +
                    "," + num(r.time_to_best, 3) + "," + num(r.total_time, 3) + "," +
                    std::to_string(r.iterations) + "," +
                    (b && r.feasible ? num(gap_percent(r.best_distance, *b), 2) : std::string()) + "\n";
    by_instance[r.instance].push_back(&r);
  }

  rep.summary_csv = "instance,runs,feasible_runs,best_td,mean_td,mean_time_to_best_s,bks,best_gap_pct,mean_gap_pct\n";
  for (const auto& [name, runs] : by_instance) {
    int feasible = 0;
    double best = 0.0;
    double sum = 0.0;
    double ttb = 0.0;
    for (const RunRecord* r : runs) {
      ttb += r->time_to_best;
      if (!r->feasible) continue;
      best = feasible == 0 ? r->best_distance : std::min(best, r->best_distance);
      sum += r->best_distance;
      ++feasible;
    }
    const double mean = feasible > 0 ? sum / feasible : 0.0;
    const auto b = bks_lookup(name, bks);
    rep.summary_csv += name + "," + std::to_string(runs.size()) + "," + std::to_string(feasible) + "," +
                       (feasible ? num(best, 2) : std::string()) + "," + (feasible ? num(mean, 2) : std::string()) +
                       "," + num(ttb / static_cast<double>(runs.size()), 3) + "," + (b ? num(*b, 2) : std::string()) +
                       "," + (b && feasible ? num(gap_percent(best, *b), 2) : std::string()) + "," +
                       (b && feasible ? num(gap_percent(mean, *b), 2) : std::string()) + "\n";
  }
  return rep;
}

}  // namespace gvrp
