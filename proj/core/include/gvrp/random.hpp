#pragma once

#include <random>

namespace gvrp {

// All stochastic components draw from an explicitly passed engine so runs are
// reproducible for a fixed seed.
using Rng = std::mt19937_64;

}  // namespace gvrp
