#pragma once

// Diagnostics on solved paths: rent-price summability (bubble test),
// fundamental value and bubble component, the transversality series,
// the Balasko-Shell efficiency criterion and tail growth rates.
//
// Infinite sums are never judged by their truncated size. Each verdict is
// a ratio test over a tail window that must lie inside the final
// balanced-growth segment and after the last belief revision.

#include <string_view>
#include <vector>

#include "olg/solver.hpp"

namespace olg {

inline constexpr double kDefaultDelta = 1e-3;
inline constexpr int kDefaultTailWindow = 20;

enum class BubbleClass { Bubble, NoBubble, Unknown };

/// Summability of r_t / P_t judged by the tail growth of that ratio.
struct RentPriceTest {
  BubbleClass classification;
  double ratio_estimate;              // geometric mean of (r/P)_{t+1} / (r/P)_t over the tail
  std::vector<double> partial_sums;   // sum_{s<=t} r_s / P_s
};

RentPriceTest rent_price_test(const std::vector<double>& P, const std::vector<double>& r, int window,
                              double delta = kDefaultDelta);

struct BubbleVerdict {
  BubbleClass classification;
  double ratio_estimate;
  std::vector<double> partial_sums;
  double fundamental_value_0;       // sum_{s>=1} q_s r_s including the tail remainder
  double remainder;                 // extrapolated sum_{s>T} q_s r_s (inf if rents outgrow R)
  double bubble_component_0;        // P_0 - V_0
  std::vector<double> bubble_component;  // B_t = P_t - V_t
  std::vector<double> tvc_tail;     // q_t P_t over the tail window

  bool is_bubble() const noexcept { return classification == BubbleClass::Bubble; }
};

BubbleVerdict detect_bubble(const EquilibriumPath& path, double delta = kDefaultDelta,
                            int window = kDefaultTailWindow);

enum class EfficiencyClass { Efficient, Inefficient, Unknown };

enum class EfficiencyBranch {
  RateAboveGrowth,  // liminf R_t > G: criterion terms grow
  RatioTest,        // R_t / G tail below 1 with shares bounded away from 1: terms summable
  BoundedTerms,     // R_t / G -> 1 on a bubbly path: terms bounded away from 0
  Undetermined,
};

struct EfficiencyVerdict {
  EfficiencyClass verdict;
  std::vector<double> criterion_sums;  // sum_{s<=t} 1 / (G^s q_s)
  double rate_estimate;                // geometric mean of R_t / G over the tail
  double tail_share_max;               // max s_t over the tail
  EfficiencyBranch applicability;
};

EfficiencyVerdict efficiency_test(const EquilibriumPath& path, double delta = kDefaultDelta,
                                  int window = kDefaultTailWindow);

/// exp(mean log(x_{t+1} / x_t)) over the last `window` ratios.
double tail_growth(const std::vector<double>& series, int window = kDefaultTailWindow);

std::string_view to_string(BubbleClass c);
std::string_view to_string(EfficiencyClass c);
std::string_view to_string(EfficiencyBranch b);

}  // namespace olg
