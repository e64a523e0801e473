#pragma once

// Long-run analysis of the balanced-growth economy: income-ratio thresholds,
// regime classification, steady states with their linearisations, welfare
// classes and the credit (loan-to-income) transform.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olg/preferences.hpp"

namespace olg {

struct EconomyParams {
  CesAggregator agg;
  HousingUtility housing;
  double G;   // long-run gross growth factor, > 1
  double e1;  // young balanced-growth endowment level
  double e2;  // old balanced-growth endowment level

  EconomyParams(CesAggregator agg, HousingUtility housing, double G, double e1, double e2);

  /// Old-to-young income ratio e2 / e1.
  double w() const noexcept { return e2 / e1; }

  friend bool operator==(const EconomyParams&, const EconomyParams&) = default;
};

struct Thresholds {
  double w_f_star;  // below this no fundamental equilibrium exists
  double w_b_star;  // below this a bubbly steady state exists
};

/// CES closed forms. Requires gamma < 1.
Thresholds thresholds(const EconomyParams& p);

/// Same thresholds for an arbitrary aggregator, by bisection on the
/// increasing map w -> mrs(1, G w).
Thresholds thresholds_by_root(const Aggregator& agg, double G, double gamma);

/// w_b* alone; independent of gamma.
double bubble_threshold(const CesAggregator& agg, double G);

enum class RegimeTag {
  Fundamental,
  BubblePossibility,
  BubbleNecessity,
  CobbDouglasFundamental,
  PathologicalGammaAbove1,
};

enum class Boundary { None, AtFundamentalThreshold, AtBubbleThreshold };

struct Regime {
  RegimeTag tag;
  Boundary boundary = Boundary::None;  // |w - threshold| <= 1e-9: tag is not authoritative

  bool on_boundary() const noexcept { return boundary != Boundary::None; }
};

inline constexpr double kBoundaryTolerance = 1e-9;

Regime classify(const EconomyParams& p);

enum class SteadyStateKind { FundamentalDetrended, BubblyDetrended, Gamma1BalancedGrowth };

enum class Determinacy { Saddle, Sink, NonHyperbolic, SingularLinearization };

struct SteadyStateReport {
  SteadyStateKind kind;
  double s_star;
  double lambda1;
  double lambda2;
  Determinacy determinacy;
  double numerator;    // n in lambda1 = n / d
  double denominator;  // d
  double eis;          // elasticity of intertemporal substitution at the steady state
  // Sufficient condition for local uniqueness on the EIS; empty where none applies.
  std::optional<bool> eis_condition;
  std::vector<std::string> warnings;
};

SteadyStateReport bubbly_steady_state(const EconomyParams& p);
SteadyStateReport fundamental_steady_state(const EconomyParams& p);
SteadyStateReport gamma1_steady_state(const EconomyParams& p);

/// lambda1 = n/d at the bubbly steady state computed straight from the
/// second partials (before the EIS rewrite). Used to cross-check the report.
struct LinearizationTerms {
  double n;
  double d;
};
LinearizationTerms bubbly_linearization_from_partials(const EconomyParams& p);

enum class LongRunKind { FundamentalLongRun, BubblyLongRun };
enum class Welfare { Efficient, Inefficient };

Welfare welfare_class(const EconomyParams& p, LongRunKind kind);

struct CreditReport {
  EconomyParams effective;  // endowments replaced by available funds
  double lambda;            // loan-to-income ratio l / e1
  double w_tilde;           // (w - lambda) / (1 + lambda)
  double lower_bound;       // (w - w_b*) / (w_b* + 1)
  bool condition_holds;     // w > lambda > lower_bound
  double price_coefficient; // P_t ~ price_coefficient * G^t
  std::vector<std::string> warnings;
};

CreditReport credit_transform(const EconomyParams& p, double lambda);

std::string_view to_string(RegimeTag tag);
std::string_view to_string(Boundary b);
std::string_view to_string(SteadyStateKind k);
std::string_view to_string(Determinacy d);
std::string_view to_string(LongRunKind k);
std::string_view to_string(Welfare w);

}  // namespace olg
