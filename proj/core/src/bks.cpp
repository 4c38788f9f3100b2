#include "gvrp/report.hpp"

#include <string>

namespace gvrp {
namespace {

BksTable build() {
  BksTable t;
  const double s_central[] = {953.94, 948.69, 943.12, 947.98, 714.55, 844.43, 862.68, 712.83, 855.43, 901.19};
  const double m25[] = {1129.71, 1113.80, 1320.27, 1118.87, 1109.55, 1089.92, 1103.82, 1134.93, 1275.57, 1311.53};
  const double m50[] = {2441.41, 2241.35, 2230.13, 2193.74, 2393.32, 2380.99, 2221.61, 2415.43, 2241.03, 2402.03};
  const double m100[] = {4645.27, 4479.99, 4447.56, 4257.75, 4465.08, 4257.08, 4462.69, 4436.81, 4507.85, 4366.85};
  for (int i = 0; i < 10; ++i) {
    const std::string k = std::to_string(i + 1);
    t["S-Central_" + k] = s_central[i];
    t["M-Central25_" + k] = m25[i];
    t["M-Central50_" + k] = m50[i];
    t["M-Central100_" + k] = m100[i];
  }
  const double beijing[] = {4371.96,  6334.57,  4408.75,  6407.07,  8530.72,  12277.58, 8759.47,
                            12534.83, 12499.83, 18216.44, 12971.00, 18729.00, 16639.33, 24339.56,
                            17160.56, 24895.48, 20660.36, 30263.36, 21353.74, 31237.51};
  const int sizes[] = {200, 400, 600, 800, 1000};
  for (int s = 0; s < 5; ++s) {
    for (int i = 0; i < 4; ++i) {
      t["Beijing" + std::to_string(sizes[s]) + "_" + std::to_string(i + 1)] = beijing[s * 4 + i];
    }
  }
  return t;
}

}  // namespace

const BksTable& bks_table() {
  static const BksTable table = build();
  return table;
}

std::optional<double> bks_lookup(std::string_view instance, const BksTable& table) {
  auto it = table.find(instance);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace gvrp
