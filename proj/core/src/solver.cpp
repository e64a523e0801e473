#include "olg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "olg/errors.hpp"
#include "olg/root_finding.hpp"

namespace olg {

namespace {

constexpr double kInteriorMargin = 1e-14;

// Compares log levels, so the tolerance is a relative one on the levels.
bool close(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

EconomyParams tail_economy(const EconomyParams& params, const EndowmentPath& endowments) {
  const auto& seg = endowments.final_segment();
  return EconomyParams(params.agg, params.housing, seg.G, seg.e1, seg.e2);
}

// Rent in units of young income at t, given the shares of the step.
double rent_share(const HousingUtility& housing, const Aggregator& agg, double x, double next,
                  double old_next, double log_e_y) {
  const double y = 1.0 - x;
  const double z = old_next + next;
  const double c = agg.value(y, z);
  return housing.m * std::exp((housing.gamma - 1.0) * log_e_y) * std::pow(c, housing.gamma) /
         agg.partials(y, z).c_y;
}

// q_{t+1} = q_t / R_t, with log q_t carried alongside.
void chain_prices(EquilibriumPath& path) {
  const std::size_t n = path.size();
  path.q.assign(n, 1.0);
  path.log_q.assign(n, 0.0);
  for (std::size_t t = 0; t + 1 < n; ++t) {
    path.q[t + 1] = path.q[t] / path.R[t];
    path.log_q[t + 1] = path.log_q[t] - std::log(path.R[t]);
  }
}

}  // namespace

EndowmentPath::EndowmentPath(std::vector<EndowmentSegment> segments) : segments_(std::move(segments)) {
  require(!segments_.empty(), ErrorKind::Validation, "endowment path needs at least one segment");
  require(segments_.front().start == 0, ErrorKind::Validation, "first endowment segment must start at 0");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    std::ostringstream where;
    where << "segments[" << i << "]";
    require(s.e1 > 0.0 && std::isfinite(s.e1), ErrorKind::Validation, where.str() + ".e1 must be positive");
    require(s.e2 > 0.0 && std::isfinite(s.e2), ErrorKind::Validation, where.str() + ".e2 must be positive");
    require(s.G > 0.0 && std::isfinite(s.G), ErrorKind::Validation, where.str() + ".G must be positive");
    if (i > 0)
      require(s.start > segments_[i - 1].start, ErrorKind::Validation,
              where.str() + ".start must exceed the previous start");
  }
  require(segments_.back().G > 1.0, ErrorKind::Validation, "final endowment segment needs G > 1");
}

EndowmentPath EndowmentPath::balanced(double e1, double e2, double G) {
  return EndowmentPath({{0, e1, e2, G}});
}

const EndowmentSegment& EndowmentPath::segment_at(int t) const {
  require(t >= 0, ErrorKind::Validation, "negative date");
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](int date, const EndowmentSegment& s) { return date < s.start; });
  return *(it - 1);
}

double EndowmentPath::young(int t) const {
  const auto& s = segment_at(t);
  return s.e1 * std::pow(s.G, t);
}

double EndowmentPath::old(int t) const {
  const auto& s = segment_at(t);
  return s.e2 * std::pow(s.G, t);
}

double EndowmentPath::log_young(int t) const {
  const auto& s = segment_at(t);
  return std::log(s.e1) + t * std::log(s.G);
}

double EndowmentPath::log_old(int t) const {
  const auto& s = segment_at(t);
  return std::log(s.e2) + t * std::log(s.G);
}

bool EndowmentPath::agrees_with(const EndowmentPath& other, int until) const {
  for (int t = 0; t < until; ++t) {
    if (!close(log_young(t), other.log_young(t)) || !close(log_old(t), other.log_old(t))) return false;
  }
  return true;
}

double backward_step_share(const HousingUtility& housing, const Aggregator& agg, double next,
                           double old_next, double log_e_y, double rel_tol) {
  require(next >= 0.0 && std::isfinite(next), ErrorKind::Numeric, "backward step: S_next must be >= 0");
  require(old_next > 0.0 && std::isfinite(old_next), ErrorKind::Numeric,
          "backward step: old endowment must be positive");
  const double z = old_next + next;
  const double rent_scale = housing.m * std::exp((housing.gamma - 1.0) * log_e_y);
  const auto f = [&](double x) {
    const double y = 1.0 - x;
    const auto [c_y, c_z] = agg.partials(y, z);
    return next * c_z - x * c_y + rent_scale * std::pow(agg.value(y, z), housing.gamma);
  };
  // f(0) > 0 and f -> -inf as x -> 1; move the upper end toward 1 until it turns negative.
  double gap = 1.0 / 256.0;
  while (f(1.0 - gap) >= 0.0) {
    if (gap <= kInteriorMargin)
      fail(ErrorKind::Numeric, "backward step: residual does not change sign inside (0, e_y)");
    gap = std::max(gap / 16.0, kInteriorMargin);
  }
  return bisect(f, 0.0, 1.0 - gap, 0.0, rel_tol);
}

double backward_step(const HousingUtility& housing, const Aggregator& agg, double S_next, double e_y,
                     double e_o_next, double rel_tol) {
  require(e_y > 0.0 && std::isfinite(e_y), ErrorKind::Numeric, "backward step: e_y must be positive");
  return e_y * backward_step_share(housing, agg, S_next / e_y, e_o_next / e_y, std::log(e_y), rel_tol);
}

std::vector<double> backward_shares(const HousingUtility& housing, const Aggregator& agg,
                                    const EndowmentPath& endowments, int terminal_date,
                                    double terminal_share, double rel_tol) {
  require(terminal_date >= 0, ErrorKind::Validation, "terminal date must be >= 0");
  std::vector<double> x(static_cast<std::size_t>(terminal_date) + 1);
  x.back() = terminal_share;
  double ly_next = endowments.log_young(terminal_date);
  for (int t = terminal_date - 1; t >= 0; --t) {
    const double ly = endowments.log_young(t);
    const double next = x[t + 1] * std::exp(ly_next - ly);
    const double old_next = std::exp(endowments.log_old(t + 1) - ly);
    x[t] = backward_step_share(housing, agg, next, old_next, ly, rel_tol);
    ly_next = ly;
  }
  return x;
}

TerminalKind default_terminal(const EconomyParams& tail) {
  switch (tail.housing.branch()) {
    case GammaBranch::Equal1: return TerminalKind::Gamma1;
    case GammaBranch::Above1: return TerminalKind::GammaAbove1;
    case GammaBranch::Below1: break;
  }
  return tail.w() > thresholds(tail).w_f_star ? TerminalKind::Fundamental : TerminalKind::Bubbly;
}

double terminal_share(const EconomyParams& tail, TerminalKind kind, int terminal_date,
                      const SolverOptions& options) {
  const auto branch = tail.housing.branch();
  const auto need = [&](GammaBranch b, const char* what) {
    if (branch != b) {
      std::ostringstream os;
      os << to_string(kind) << " terminal requires " << what << " (got gamma = " << tail.housing.gamma
         << ")";
      fail(ErrorKind::Branch, os.str());
    }
  };
  switch (kind) {
    case TerminalKind::Fundamental: {
      need(GammaBranch::Below1, "gamma < 1");
      // Throws Nonexistence when w <= w_f*: every equilibrium is bubbly there.
      const auto ss = fundamental_steady_state(tail);
      if (!options.fundamental_asymptote_seed) return 0.0;
      // S_N ~ s_f e1^gamma G^(gamma N), as a share of e1 G^N.
      const double gamma = tail.housing.gamma;
      return ss.s_star * std::exp((gamma - 1.0) * (std::log(tail.e1) + terminal_date * std::log(tail.G)));
    }
    case TerminalKind::Bubbly:
      need(GammaBranch::Below1, "gamma < 1");
      return bubbly_steady_state(tail).s_star;
    case TerminalKind::Gamma1:
      need(GammaBranch::Equal1, "gamma == 1");
      return gamma1_steady_state(tail).s_star;
    case TerminalKind::GammaAbove1:
      need(GammaBranch::Above1, "gamma > 1");
      require(options.gamma_above1_gap > 0.0 && options.gamma_above1_gap < 1.0, ErrorKind::Validation,
              "gamma_above1_gap must lie in (0, 1)");
      return 1.0 - options.gamma_above1_gap;
  }
  fail(ErrorKind::Validation, "unknown terminal kind");
}

EquilibriumPath solve_path(const EconomyParams& params, const EndowmentPath& endowments,
                           TerminalKind terminal, int T, const SolverOptions& options) {
  require(T >= 1, ErrorKind::Validation, "horizon T must be at least 1");
  require(options.horizon_extension >= 1, ErrorKind::Validation, "horizon_extension must be at least 1");
  const int N = T + options.horizon_extension;
  const EconomyParams tail = tail_economy(params, endowments);
  const double x_N = terminal_share(tail, terminal, N, options);
  const auto x = backward_shares(params.housing, params.agg, endowments, N, x_N, options.bisection_rel_tol);

  EquilibriumPath path;
  const auto n = static_cast<std::size_t>(T) + 1;
  for (auto* v : {&path.e_y, &path.e_o, &path.S, &path.s, &path.P, &path.r, &path.R, &path.c_y, &path.c_o})
    v->resize(n);
  path.belief_index.assign(n, 0);
  path.terminal_kind = terminal;
  path.G = endowments.final_segment().G;
  path.balanced_since = endowments.balanced_since();

  for (int t = 0; t <= T; ++t) {
    const double ly = endowments.log_young(t);
    const double next = x[t + 1] * std::exp(endowments.log_young(t + 1) - ly);
    const double old_next = std::exp(endowments.log_old(t + 1) - ly);
    const double e_y = endowments.young(t);
    path.e_y[t] = e_y;
    path.e_o[t] = endowments.old(t);
    path.s[t] = x[t];
    path.S[t] = x[t] * e_y;
    path.r[t] = rent_share(params.housing, params.agg, x[t], next, old_next, ly) * e_y;
    path.P[t] = path.S[t] - path.r[t];
    path.c_y[t] = e_y - path.S[t];
    path.c_o[t] = path.e_o[t] + path.S[t];
    if (!(path.P[t] > 0.0)) {
      std::ostringstream os;
      os << "non-positive housing price P_" << t << " = " << path.P[t]
         << "; increase the horizon extension";
      fail(ErrorKind::Horizon, os.str());
    }
    path.R[t] = next * e_y / path.P[t];
  }
  chain_prices(path);
  return path;
}

EquilibriumPath solve_path(const EconomyParams& params, TerminalKind terminal, int T,
                           const SolverOptions& options) {
  return solve_path(params, EndowmentPath::balanced(params.e1, params.e2, params.G), terminal, T, options);
}

EquilibriumPath solve_scenario(const EconomyParams& params, const BeliefSchedule& schedule,
                               const EndowmentPath& realized, int T, const SolverOptions& options) {
  const auto& ann = schedule.announcements;
  require(!ann.empty(), ErrorKind::Validation, "belief schedule needs at least one announcement");
  require(ann.front().announce_date == 0, ErrorKind::Validation, "first announcement must be at t = 0");
  for (std::size_t k = 0; k < ann.size(); ++k) {
    std::ostringstream where;
    where << "announcements[" << k << "]";
    if (k > 0)
      require(ann[k].announce_date > ann[k - 1].announce_date, ErrorKind::Validation,
              where.str() + ".announce_date must exceed the previous one");
    require(ann[k].announce_date <= T, ErrorKind::Validation, where.str() + ".announce_date exceeds T");
    const int until = k + 1 < ann.size() ? ann[k + 1].announce_date : T + 1;
    if (!ann[k].believed.agrees_with(realized, until))
      fail(ErrorKind::Validation,
           where.str() + ": believed endowments differ from the realised ones while the belief is held");
  }

  std::vector<EquilibriumPath> solved;
  solved.reserve(ann.size());
  for (const auto& a : ann) solved.push_back(solve_path(params, a.believed, a.terminal, T, options));
  if (ann.size() == 1) return solved.front();

  EquilibriumPath path = solved.front();
  path.terminal_kind = ann.back().terminal;
  path.G = realized.final_segment().G;
  path.balanced_since = realized.balanced_since();
  for (std::size_t k = 1; k < ann.size(); ++k) {
    const int a = ann[k].announce_date;
    const int b = k + 1 < ann.size() ? ann[k + 1].announce_date : T + 1;
    const auto& src = solved[k];
    for (int t = a; t < b; ++t) {
      path.e_y[t] = src.e_y[t];
      path.e_o[t] = src.e_o[t];
      path.S[t] = src.S[t];
      path.s[t] = src.s[t];
      path.P[t] = src.P[t];
      path.r[t] = src.r[t];
      path.R[t] = src.R[t];
      path.c_y[t] = src.c_y[t];
      path.c_o[t] = src.c_o[t];
      path.belief_index[t] = static_cast<int>(k);
    }
    path.revision_dates.push_back(a);
    // The old holding the house at a - 1 sell at the revised price.
    path.R[a - 1] = path.S[a] / path.P[a - 1];
  }
  chain_prices(path);
  return path;
}

double ces_dynamics_residual(const EconomyParams& params, const EquilibriumPath& path, int t) {
  require(t >= 0 && t < path.horizon(), ErrorKind::Validation, "residual date out of range");
  const double beta = params.agg.beta();
  const double sigma = params.agg.sigma();
  const double gamma = params.housing.gamma;
  const double y = path.c_y[t];
  const double z = path.e_o[t + 1] + path.S[t + 1];
  const double c = params.agg.value(y, z);
  // Multiplied through by c^sigma so both sides are in expenditure units.
  const double lhs = beta * path.S[t + 1] * std::pow(z / c, -sigma);
  const double rhs_a = (1.0 - beta) * path.S[t] * std::pow(y / c, -sigma);
  const double rhs_b = params.housing.m * std::pow(c, gamma);
  const double scale = std::max({std::abs(lhs), std::abs(rhs_a), std::abs(rhs_b)});
  return std::abs(lhs - (rhs_a - rhs_b)) / scale;
}

std::string_view to_string(TerminalKind k) {
  switch (k) {
    case TerminalKind::Fundamental: return "Fundamental";
    case TerminalKind::Bubbly: return "Bubbly";
    case TerminalKind::Gamma1: return "Gamma1";
    case TerminalKind::GammaAbove1: return "GammaAbove1";
  }
  return "?";
}

}  // namespace olg
