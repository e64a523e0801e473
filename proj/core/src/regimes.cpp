#include "olg/regimes.hpp"

#include <cmath>
#include <sstream>

#include "olg/errors.hpp"
#include "olg/root_finding.hpp"

namespace olg {

namespace {

void require_below1(const EconomyParams& p, std::string_view op) {
  if (p.housing.branch() != GammaBranch::Below1) {
    std::ostringstream os;
    os << op << " requires gamma < 1 (got gamma = " << p.housing.gamma << ")";
    fail(ErrorKind::Branch, os.str());
  }
}

Determinacy determinacy_of(double n, double d) {
  if (std::abs(d) <= 1e-12 * std::abs(n)) return Determinacy::SingularLinearization;
  const double lambda = std::abs(n / d);
  if (std::abs(lambda - 1.0) <= 1e-12) return Determinacy::NonHyperbolic;
  return lambda > 1.0 ? Determinacy::Saddle : Determinacy::Sink;
}

}  // namespace

EconomyParams::EconomyParams(CesAggregator agg_, HousingUtility housing_, double G_, double e1_,
                             double e2_)
    : agg(agg_), housing(housing_), G(G_), e1(e1_), e2(e2_) {
  require(G > 1.0 && std::isfinite(G), ErrorKind::Validation, "growth factor G must exceed 1");
  require(e1 > 0.0 && std::isfinite(e1), ErrorKind::Validation, "e1 must be positive");
  require(e2 > 0.0 && std::isfinite(e2), ErrorKind::Validation, "e2 must be positive");
}

double bubble_threshold(const CesAggregator& agg, double G) {
  const double beta = agg.beta();
  const double sigma = agg.sigma();
  return std::pow(beta / (1.0 - beta) * std::pow(G, 1.0 - sigma), 1.0 / sigma);
}

Thresholds thresholds(const EconomyParams& p) {
  require_below1(p, "thresholds");
  const double beta = p.agg.beta();
  const double sigma = p.agg.sigma();
  const double gamma = p.housing.gamma;
  return {std::pow(beta / (1.0 - beta) * std::pow(p.G, gamma - sigma), 1.0 / sigma),
          bubble_threshold(p.agg, p.G)};
}

Thresholds thresholds_by_root(const Aggregator& agg, double G, double gamma) {
  require(gamma < 1.0, ErrorKind::Branch, "thresholds require gamma < 1");
  const auto solve_for = [&](double target) {
    return bisect_positive_axis([&](double w) { return agg.mrs(1.0, G * w) - target; });
  };
  return {solve_for(std::pow(G, gamma)), solve_for(G)};
}

Regime classify(const EconomyParams& p) {
  switch (p.housing.branch()) {
    case GammaBranch::Above1: return {RegimeTag::PathologicalGammaAbove1};
    case GammaBranch::Equal1: return {RegimeTag::CobbDouglasFundamental};
    case GammaBranch::Below1: break;
  }
  const auto [w_f, w_b] = thresholds(p);
  const double w = p.w();
  Regime regime{RegimeTag::BubblePossibility};
  if (w > w_b)
    regime.tag = RegimeTag::Fundamental;
  else if (w < w_f)
    regime.tag = RegimeTag::BubbleNecessity;
  if (std::abs(w - w_b) <= kBoundaryTolerance)
    regime.boundary = Boundary::AtBubbleThreshold;
  else if (std::abs(w - w_f) <= kBoundaryTolerance)
    regime.boundary = Boundary::AtFundamentalThreshold;
  return regime;
}

SteadyStateReport bubbly_steady_state(const EconomyParams& p) {
  require_below1(p, "bubbly steady state");
  const double w_b = bubble_threshold(p.agg, p.G);
  const double w = p.w();
  if (!(w < w_b)) {
    std::ostringstream os;
    os << "no bubbly steady state: w = " << w << " >= w_b* = " << w_b;
    fail(ErrorKind::Nonexistence, os.str());
  }
  const double s = (w_b - w) / (w_b + 1.0);
  const double y = 1.0 - s;
  const double z = p.G * (w + s);
  const double eis = p.agg.eis(y, z);
  const double g1 = p.agg.partials(y, z).c_y;

  SteadyStateReport r{};
  r.kind = SteadyStateKind::BubblyDetrended;
  r.s_star = s;
  r.numerator = (1.0 + s / (eis * (1.0 - s))) * g1;
  r.denominator = (1.0 - s / (eis * (w + s))) * g1;
  r.lambda1 = r.numerator / r.denominator;
  r.lambda2 = std::pow(p.G, p.housing.gamma - 1.0);
  r.determinacy = determinacy_of(r.numerator, r.denominator);
  r.eis = eis;

  const double singular_eis = (1.0 - w / w_b) / (1.0 + w);
  const double lower = 0.5 * (1.0 - w_b) * singular_eis;
  r.eis_condition = lower < eis && std::abs(eis - singular_eis) > 1e-12 * singular_eis;
  if (r.determinacy == Determinacy::SingularLinearization)
    r.warnings.push_back("linearisation singular (d = 0); local dynamics undetermined");
  if (r.determinacy == Determinacy::NonHyperbolic)
    r.warnings.push_back("non-hyperbolic steady state (|lambda1| = 1); local dynamics undetermined");
  return r;
}

LinearizationTerms bubbly_linearization_from_partials(const EconomyParams& p) {
  require_below1(p, "bubbly linearisation");
  const double w_b = bubble_threshold(p.agg, p.G);
  const double w = p.w();
  require(w < w_b, ErrorKind::Nonexistence, "no bubbly steady state");
  const double s = (w_b - w) / (w_b + 1.0);
  const double y = 1.0 - s;
  const double z = p.G * (w + s);
  const auto [c_y, c_z] = p.agg.partials(y, z);
  const auto [c_yy, c_yz, c_zz] = p.agg.second_partials(y, z);
  const double G = p.G;
  return {G * s * c_yz + c_y - s * c_yy, G * c_z + G * G * s * c_zz - G * s * c_yz};
}

SteadyStateReport fundamental_steady_state(const EconomyParams& p) {
  require_below1(p, "fundamental steady state");
  const auto [w_f, w_b] = thresholds(p);
  const double w = p.w();
  if (!(w > w_f)) {
    std::ostringstream os;
    os << "no fundamental equilibrium: w = " << w << " <= w_f* = " << w_f
       << " (all equilibria are bubbly)";
    fail(ErrorKind::Nonexistence, os.str());
  }
  const double y = 1.0;
  const double z = p.G * w;
  const double c = p.agg.value(y, z);
  const auto [c_y, c_z] = p.agg.partials(y, z);
  const double G_gamma = std::pow(p.G, p.housing.gamma);
  const double denom = c_y - G_gamma * c_z;

  SteadyStateReport r{};
  r.kind = SteadyStateKind::FundamentalDetrended;
  r.s_star = p.housing.m * std::pow(c, p.housing.gamma) / denom;
  r.numerator = c_y;
  r.denominator = G_gamma * c_z;
  r.lambda1 = c_y / (G_gamma * c_z);
  r.lambda2 = std::pow(p.G, p.housing.gamma - 1.0);
  r.determinacy = determinacy_of(r.numerator, r.denominator);
  r.eis = p.agg.eis(y, z);
  if (denom < 1e-8 * c_y)
    r.warnings.push_back("near-singular fundamental steady state: w is within rounding of w_f*");
  return r;
}

SteadyStateReport gamma1_steady_state(const EconomyParams& p) {
  if (p.housing.branch() != GammaBranch::Equal1)
    fail(ErrorKind::Branch, "balanced-growth steady state requires gamma == 1");
  const double G = p.G;
  const double w = p.w();
  const double m = p.housing.m;
  // f'(s) for f(s) = log c(1-s, G(w+s)) + m log s; strictly decreasing on (0,1).
  const auto slope = [&](double s) {
    const double y = 1.0 - s;
    const double z = G * (w + s);
    const auto [c_y, c_z] = p.agg.partials(y, z);
    return (G * c_z - c_y) / p.agg.value(y, z) + m / s;
  };
  double lo = 0.5;
  while (slope(lo) <= 0.0 && lo > 1e-300) lo *= 0.5;
  double hi = 0.5;
  while (slope(hi) >= 0.0 && 1.0 - hi > 1e-16) hi = 1.0 - 0.5 * (1.0 - hi);
  const double s = bisect(slope, lo, hi);

  const double y = 1.0 - s;
  const double z = G * (w + s);
  const double c = p.agg.value(y, z);
  const auto [c_y, c_z] = p.agg.partials(y, z);
  const auto [c_yy, c_yz, c_zz] = p.agg.second_partials(y, z);

  SteadyStateReport r{};
  r.kind = SteadyStateKind::Gamma1BalancedGrowth;
  r.s_star = s;
  r.numerator = (1.0 + m) * c_y + G * s * c_yz - s * c_yy;
  r.denominator = G * (1.0 + m) * c_z - G * s * c_yz + G * G * s * c_zz;
  r.lambda1 = r.numerator / r.denominator;
  r.lambda2 = 1.0;  // the auxiliary trend variable is constant when gamma == 1
  r.determinacy = determinacy_of(r.numerator, r.denominator);
  r.eis = c_y * c_z / (c * c_yz);
  const double rhs = (1.0 + w / s) / (1.0 + w) * (1.0 + G * w * c_z / c_y);
  r.eis_condition = 1.0 / r.eis < rhs;
  return r;
}

Welfare welfare_class(const EconomyParams& p, LongRunKind kind) {
  require_below1(p, "welfare classification");
  const auto [w_f, w_b] = thresholds(p);
  const double w = p.w();
  if (kind == LongRunKind::FundamentalLongRun && !(w > w_f))
    fail(ErrorKind::Inconsistency, "fundamental long-run equilibrium does not exist for w <= w_f*");
  if (kind == LongRunKind::BubblyLongRun && !(w < w_b))
    fail(ErrorKind::Inconsistency, "bubbly long-run equilibrium does not exist for w >= w_b*");
  if (w >= w_b) return Welfare::Efficient;
  return kind == LongRunKind::BubblyLongRun ? Welfare::Efficient : Welfare::Inefficient;
}

CreditReport credit_transform(const EconomyParams& p, double lambda) {
  const double w = p.w();
  if (!(lambda >= 0.0) || !(lambda < w)) {
    std::ostringstream os;
    os << "loan-to-income ratio " << lambda << " must satisfy 0 <= lambda < w = " << w;
    fail(ErrorKind::InfeasibleCredit, os.str());
  }
  const double w_b = bubble_threshold(p.agg, p.G);
  CreditReport r{EconomyParams(p.agg, p.housing, p.G, p.e1 * (1.0 + lambda), p.e1 * (w - lambda)),
                 lambda,
                 (w - lambda) / (1.0 + lambda),
                 (w - w_b) / (w_b + 1.0),
                 false,
                 0.0,
                 {}};
  if (lambda == 0.0) r.effective = p;
  r.condition_holds = w > lambda && lambda > r.lower_bound;
  r.price_coefficient = p.e1 * ((w_b - w) / (w_b + 1.0) + lambda);
  if (!r.condition_holds) {
    std::ostringstream os;
    os << "lambda = " << lambda << " is not above (w - w_b*)/(w_b* + 1) = " << r.lower_bound
       << "; a bubbly steady state may not exist";
    r.warnings.push_back(os.str());
  }
  if (p.housing.branch() != GammaBranch::Below1)
    r.warnings.push_back("credit bubble condition only applies for gamma < 1");
  return r;
}

std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::Fundamental: return "Fundamental";
    case RegimeTag::BubblePossibility: return "BubblePossibility";
    case RegimeTag::BubbleNecessity: return "BubbleNecessity";
    case RegimeTag::CobbDouglasFundamental: return "CobbDouglasFundamental";
    case RegimeTag::PathologicalGammaAbove1: return "PathologicalGammaAbove1";
  }
  return "?";
}

std::string_view to_string(Boundary b) {
  switch (b) {
    case Boundary::None: return "none";
    case Boundary::AtFundamentalThreshold: return "w_f_star";
    case Boundary::AtBubbleThreshold: return "w_b_star";
  }
  return "?";
}

std::string_view to_string(SteadyStateKind k) {
  switch (k) {
    case SteadyStateKind::FundamentalDetrended: return "FundamentalDetrended";
    case SteadyStateKind::BubblyDetrended: return "BubblyDetrended";
    case SteadyStateKind::Gamma1BalancedGrowth: return "Gamma1BalancedGrowth";
  }
  return "?";
}

std::string_view to_string(Determinacy d) {
  switch (d) {
    case Determinacy::Saddle: return "Saddle";
    case Determinacy::Sink: return "Sink";
    case Determinacy::NonHyperbolic: return "NonHyperbolic";
    case Determinacy::SingularLinearization: return "SingularLinearization";
  }
  return "?";
}

std::string_view to_string(LongRunKind k) {
  return k == LongRunKind::FundamentalLongRun ? "FundamentalLongRun" : "BubblyLongRun";
}

std::string_view to_string(Welfare w) { return w == Welfare::Efficient ? "Efficient" : "Inefficient"; }

}  // namespace olg
