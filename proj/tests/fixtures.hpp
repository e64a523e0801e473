#pragma once

#include <algorithm>
#include <cmath>

#include "olg/regimes.hpp"

namespace olg::testing {

// Benchmark economy: beta = 1/2, sigma = 1, gamma = 1/2, m = 0.1, G = 1.1.
inline EconomyParams economy(double e1, double e2, double gamma = 0.5, double G = 1.1) {
  return EconomyParams(CesAggregator(0.5, 1.0), HousingUtility(gamma, 0.1), G, e1, e2);
}

inline EconomyParams fundamental_config() { return economy(95.0, 105.0); }
inline EconomyParams bubbly_config() { return economy(105.0, 95.0); }

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace olg::testing
