#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gvrp/instance.hpp"
#include "gvrp/solution.hpp"

namespace gvrp {

// Plain-text instance format:
//
//   N: 15
//   S: 1
//   M: 15
//   SPEED: 40
//   TMAX: 7
//   EF: 160
//   CR: 1
//   TAU_S: 0.5
//   ETA: 1
//   TAU_C: 0.5        (optional default customer service time)
//   NODES
//   0 DEPOT 0 0
//   1 CUST 12.5 3 [service]
//   16 AFS 40 40
//
// '#' starts a comment. Throws ParseError with a 1-based line and column.
Instance parse_instance(std::string_view text);
Instance read_instance_file(const std::filesystem::path& path);

// Numbers are written with 12 significant digits. Requires coordinates.
std::string write_instance(const Instance& inst);
void write_instance_file(const Instance& inst, const std::filesystem::path& path);

// One route per line, node ids separated by blanks, depot at both ends.
Solution parse_solution(std::string_view text, const Instance& inst);
Solution read_solution_file(const std::filesystem::path& path, const Instance& inst);
std::string write_solution(const Solution& sol);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace gvrp
