#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace gvrp {

struct RunRecord {
  std::string instance;
  unsigned long long seed = 0;
  double best_distance = 0.0;
  bool feasible = false;
  double time_to_best = 0.0;  // seconds
  double total_time = 0.0;    // seconds
  int iterations = 0;
};

using BksTable = std::map<std::string, double, std::less<>>;

// Best-known distances per instance name ("S-Central_5", "M-Central50_3",
// "Beijing400_2", ...).
const BksTable& bks_table();
std::optional<double> bks_lookup(std::string_view instance, const BksTable& table = bks_table());

// 100 (TD - BKS) / BKS.
double gap_percent(double distance, double bks);

struct Report {
  std::string runs_csv;     // one row per record, input order
  std::string summary_csv;  // one row per instance, sorted by name
};

// Throws std::invalid_argument on an empty record list. Gaps are left empty
// for instances missing from the table or runs without a feasible solution.
Report write_report(std::span<const RunRecord> records, const BksTable& bks = bks_table());

}  // namespace gvrp
