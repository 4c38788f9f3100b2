#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "gvrp/instance.hpp"

namespace gvrp {

// Synthetic instance families:
//   s_central      15 customers around one central station (eta 1), depot
//                  80 miles (two hours) away, M 15, T_max 7 h, range 160 mi
//   m_central      n in {25, 50, 100}: eta 2/3/8, M 7/13/25, T_max 7.5 h
//   beijing        n customers uniform in a box, eta n/10, T_max 8 h, M = n
//   tiny           3..6 customers and one station, small enough for the oracle
// All use speed 40 and 0.5 h service and refuel times. Coordinates are
// rounded to 4 decimals so written files parse back bit-exactly.
// `customers` = 0 picks the family default. Throws UnknownProfile.
Instance generate_instance(std::string_view profile, int customers, std::uint64_t seed);

std::vector<std::string_view> profile_names();

}  // namespace gvrp
