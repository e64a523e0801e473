#include "olg/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "olg/errors.hpp"

namespace olg {

namespace {

void check_window(int window, std::size_t length) {
  require(window >= 1, ErrorKind::Validation, "tail window must be at least 1");
  if (static_cast<std::size_t>(window) * 2 > length) {
    std::ostringstream os;
    os << "tail window " << window << " exceeds half the series length " << length;
    fail(ErrorKind::Applicability, os.str());
  }
}

// The tail (T - window, T] must sit in the final balanced segment and
// after every belief revision.
void check_tail(const EquilibriumPath& path, int window) {
  check_window(window, path.size());
  const int first = path.horizon() - window;
  if (first < path.balanced_since) {
    std::ostringstream os;
    os << "tail window [" << first << ", " << path.horizon()
       << "] leaves the final balanced-growth segment starting at " << path.balanced_since;
    fail(ErrorKind::Applicability, os.str());
  }
  for (int d : path.revision_dates) {
    if (d > first) {
      std::ostringstream os;
      os << "tail window [" << first << ", " << path.horizon() << "] crosses the belief revision at t = "
         << d;
      fail(ErrorKind::Applicability, os.str());
    }
  }
}

double geometric_mean(const std::vector<double>& v, std::size_t from) {
  double acc = 0.0;
  for (std::size_t i = from; i < v.size(); ++i) acc += std::log(v[i]);
  return std::exp(acc / static_cast<double>(v.size() - from));
}

}  // namespace

double tail_growth(const std::vector<double>& series, int window) {
  for (double x : series)
    require(x > 0.0 && std::isfinite(x), ErrorKind::Domain, "tail_growth needs a positive series");
  check_window(window, series.size());
  const std::size_t n = series.size();
  double acc = 0.0;
  for (std::size_t i = n - window; i < n; ++i) acc += std::log(series[i] / series[i - 1]);
  return std::exp(acc / window);
}

RentPriceTest rent_price_test(const std::vector<double>& P, const std::vector<double>& r, int window,
                              double delta) {
  require(P.size() == r.size(), ErrorKind::Validation, "price and rent series differ in length");
  std::vector<double> ratio(P.size());
  RentPriceTest out{BubbleClass::Unknown, 0.0, std::vector<double>(P.size())};
  double sum = 0.0;
  for (std::size_t t = 0; t < P.size(); ++t) {
    require(P[t] > 0.0 && r[t] > 0.0, ErrorKind::Domain, "rent-price test needs positive P and r");
    ratio[t] = r[t] / P[t];
    sum += ratio[t];
    out.partial_sums[t] = sum;
  }
  out.ratio_estimate = tail_growth(ratio, window);
  if (out.ratio_estimate < 1.0 - delta)
    out.classification = BubbleClass::Bubble;
  else if (std::abs(out.ratio_estimate - 1.0) <= delta)
    out.classification = BubbleClass::NoBubble;
  return out;
}

BubbleVerdict detect_bubble(const EquilibriumPath& path, double delta, int window) {
  check_tail(path, window);
  const auto test = rent_price_test(path.P, path.r, window, delta);
  const int T = path.horizon();
  const std::size_t n = path.size();

  // Beyond T, rents grow at rho_r and are discounted at the tail rate.
  const double rho_r = tail_growth(path.r, window);
  const double R_bar = geometric_mean(path.R, n - window);
  // V_t = (r_{t+1} + V_{t+1}) / R_t, started from the extrapolated tail value.
  std::vector<double> V(n);
  V[T] = rho_r < R_bar ? path.r[T] * rho_r / (R_bar - rho_r) : std::numeric_limits<double>::infinity();
  for (int t = T - 1; t >= 0; --t) V[t] = (path.r[t + 1] + V[t + 1]) / path.R[t];

  BubbleVerdict v{test.classification,
                  test.ratio_estimate,
                  test.partial_sums,
                  V[0],
                  std::exp(path.log_q[T]) * V[T],
                  path.P[0] - V[0],
                  std::vector<double>(n),
                  {}};
  for (std::size_t t = 0; t < n; ++t) v.bubble_component[t] = path.P[t] - V[t];
  for (std::size_t t = n - window - 1; t < n; ++t) v.tvc_tail.push_back(path.q[t] * path.P[t]);
  return v;
}

EfficiencyVerdict efficiency_test(const EquilibriumPath& path, double delta, int window) {
  check_tail(path, window);
  const std::size_t n = path.size();
  const double log_G = std::log(path.G);

  EfficiencyVerdict v{EfficiencyClass::Unknown, std::vector<double>(n), 0.0, 0.0,
                      EfficiencyBranch::Undetermined};
  // 1 / (G^t q_t) = prod_{s<t} R_s / G, accumulated in logs.
  double log_term = 0.0;
  double sum = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    sum += std::exp(log_term);
    v.criterion_sums[t] = sum;
    log_term += std::log(path.R[t]) - log_G;
  }

  double acc = 0.0;
  for (std::size_t t = n - window; t < n; ++t) acc += std::log(path.R[t]) - log_G;
  v.rate_estimate = std::exp(acc / window);
  v.tail_share_max = *std::max_element(path.s.end() - window, path.s.end());

  if (v.rate_estimate >= 1.0 + delta) {
    v.verdict = EfficiencyClass::Efficient;
    v.applicability = EfficiencyBranch::RateAboveGrowth;
  } else if (v.tail_share_max < 1.0 - delta) {
    if (v.rate_estimate < 1.0 - delta) {
      v.verdict = EfficiencyClass::Inefficient;
      v.applicability = EfficiencyBranch::RatioTest;
    } else if (path.terminal_kind == TerminalKind::Bubbly) {
      v.verdict = EfficiencyClass::Efficient;
      v.applicability = EfficiencyBranch::BoundedTerms;
    }
  }
  return v;
}

std::string_view to_string(BubbleClass c) {
  switch (c) {
    case BubbleClass::Bubble: return "Bubble";
    case BubbleClass::NoBubble: return "NoBubble";
    case BubbleClass::Unknown: return "Unknown";
  }
  return "?";
}

std::string_view to_string(EfficiencyClass c) {
  switch (c) {
    case EfficiencyClass::Efficient: return "Efficient";
    case EfficiencyClass::Inefficient: return "Inefficient";
    case EfficiencyClass::Unknown: return "Unknown";
  }
  return "?";
}

std::string_view to_string(EfficiencyBranch b) {
  switch (b) {
    case EfficiencyBranch::RateAboveGrowth: return "RateAboveGrowth";
    case EfficiencyBranch::RatioTest: return "RatioTest";
    case EfficiencyBranch::BoundedTerms: return "BoundedTerms";
    case EfficiencyBranch::Undetermined: return "Undetermined";
  }
  return "?";
}

}  // namespace olg
