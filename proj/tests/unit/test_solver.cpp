#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "olg/analytics.hpp"
#include "olg/errors.hpp"
#include "olg/solver.hpp"

namespace {

using namespace olg;
using olg::testing::economy;
using olg::testing::rel_diff;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no olg::Error thrown";
  return ErrorKind::Numeric;
}

void expect_structure(const EconomyParams& p, const EquilibriumPath& path) {
  const int T = path.horizon();
  for (int t = 0; t <= T; ++t) {
    ASSERT_GT(path.S[t], 0.0) << "t=" << t;
    ASSERT_LT(path.S[t], path.e_y[t]) << "t=" << t;
    ASSERT_GT(path.P[t], 0.0) << "t=" << t;
    EXPECT_LE(std::abs(path.c_y[t] + path.c_o[t] - (path.e_y[t] + path.e_o[t])),
              4e-16 * (path.e_y[t] + path.e_o[t]));
    EXPECT_NEAR(path.s[t] * path.e_y[t], path.S[t], 1e-15 * path.S[t]);
  }
  for (int t = 0; t < T; ++t) {
    EXPECT_NEAR(path.R[t], path.S[t + 1] / path.P[t], 1e-14 * path.R[t]);
    EXPECT_EQ(path.q[t + 1], path.q[t] / path.R[t]);
    EXPECT_NEAR(path.log_q[t + 1], path.log_q[t] - std::log(path.R[t]), 1e-12 * std::abs(path.log_q[t + 1]));
    // Choices at t were made against the belief held at t.
    if (path.belief_index[t] != path.belief_index[t + 1]) continue;
    EXPECT_LE(ces_dynamics_residual(p, path, t), 1e-10) << "t=" << t;
    // Rent identity on the equilibrium path: r_t = S_t - S_{t+1} c_z / c_y.
    const auto [c_y, c_z] = p.agg.partials(path.c_y[t], path.e_o[t + 1] + path.S[t + 1]);
    EXPECT_NEAR(path.r[t], path.S[t] - path.S[t + 1] * c_z / c_y, 1e-9 * path.S[t]) << "t=" << t;
  }
  EXPECT_EQ(path.q[0], 1.0);
}

void expect_no_arbitrage(const EquilibriumPath& path) {
  for (int t = 0; t < path.horizon(); ++t) {
    if (path.belief_index[t] != path.belief_index[t + 1]) continue;
    // q_t P_t = q_{t+1} (P_{t+1} + r_{t+1}), divided by q_t.
    const double lhs = path.P[t];
    const double rhs = std::exp(path.log_q[t + 1] - path.log_q[t]) * (path.P[t + 1] + path.r[t + 1]);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * lhs) << "t=" << t;
  }
}

TEST(BackwardStep, NearBubblySteadyStateMatchesOracle) {
  const auto p = olg::testing::bubbly_config();
  const double e_y = 105 * std::pow(1.1, 40);
  const double S = backward_step(p.housing, p.agg, 5 * std::pow(1.1, 41), e_y, 95 * std::pow(1.1, 41));
  EXPECT_NEAR(S / e_y, 0.05024658947958093, 1e-13);
}

TEST(BackwardStep, ResidualOnRandomInstances) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> beta(0.2, 0.8), sigma(0.3, 3.0), gamma(0.2, 1.8), m(0.02, 0.5),
      lvl(0.5, 50.0), frac(0.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const CesAggregator agg(beta(rng), sigma(rng));
    const HousingUtility h(gamma(rng), m(rng));
    const double e_y = lvl(rng), e_o = lvl(rng), S_next = frac(rng) * e_y;
    const double S = backward_step(h, agg, S_next, e_y, e_o);
    ASSERT_GT(S, 0.0);
    ASSERT_LT(S, e_y);
    const double y = e_y - S, z = e_o + S_next;
    const auto [c_y, c_z] = agg.partials(y, z);
    const double lhs = S_next * c_z + h.m * std::pow(agg.value(y, z), h.gamma);
    const double rhs = S * c_y;
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max(lhs, rhs));
  }
}

// df/dS_next = c_z [1 + gamma m c^(gamma-1) - c_y (S + S_next y / z) / (eis c)], which is
// positive whenever eis >= 1 but can turn negative when sigma > 1.
TEST(BackwardStep, MonotoneInNextExpenditureWhenEisAtLeastOne) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> beta(0.2, 0.8), sigma(0.3, 1.0), gamma(0.2, 1.8), m(0.02, 0.5),
      lvl(0.5, 50.0), frac(0.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const CesAggregator agg(beta(rng), sigma(rng));
    const HousingUtility h(gamma(rng), m(rng));
    const double e_y = lvl(rng), e_o = lvl(rng), S_next = frac(rng) * e_y;
    const double S = backward_step(h, agg, S_next, e_y, e_o);
    EXPECT_GT(backward_step(h, agg, S_next * 1.01 + 1e-3, e_y, e_o), S);
  }
}

TEST(BackwardStep, LowEisCanReverseComparativeStatics) {
  const CesAggregator agg(0.5, 2.5);
  const HousingUtility h(0.5, 0.1);
  EXPECT_LT(backward_step(h, agg, 1.5, 1.0, 0.6), backward_step(h, agg, 1.4, 1.0, 0.6));
}

TEST(BackwardStep, RejectsInvalidInputs) {
  const auto p = olg::testing::bubbly_config();
  EXPECT_EQ(kind_of([&] { backward_step(p.housing, p.agg, -1.0, 1.0, 1.0); }), ErrorKind::Numeric);
  EXPECT_EQ(kind_of([&] { backward_step(p.housing, p.agg, 1.0, 0.0, 1.0); }), ErrorKind::Numeric);
  EXPECT_EQ(kind_of([&] { backward_step(p.housing, p.agg, 1.0, 1.0, 0.0); }), ErrorKind::Numeric);
}

TEST(EndowmentPath, SegmentsAndValidation) {
  const EndowmentPath e({{0, 105, 95, 1.1}, {40, 95, 105, 1.1}});
  EXPECT_EQ(e.segment_at(39).e1, 105);
  EXPECT_EQ(e.segment_at(40).e1, 95);
  EXPECT_EQ(e.balanced_since(), 40);
  EXPECT_NEAR(e.young(41), 95 * std::pow(1.1, 41), 1e-12 * e.young(41));
  EXPECT_NEAR(e.log_old(41), std::log(105 * std::pow(1.1, 41)), 1e-12);
  EXPECT_TRUE(e.agrees_with(EndowmentPath::balanced(105, 95, 1.1), 40));
  EXPECT_FALSE(e.agrees_with(EndowmentPath::balanced(105, 95, 1.1), 41));
  EXPECT_EQ(kind_of([] { EndowmentPath({}); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([] { EndowmentPath({{1, 1, 1, 1.1}}); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([] { EndowmentPath({{0, 1, 1, 1.1}, {0, 1, 1, 1.1}}); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([] { EndowmentPath({{0, 1, 1, 0.9}}); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([] { EndowmentPath({{0, 1, -1, 1.1}}); }), ErrorKind::Validation);
}

TEST(SolvePath, FundamentalTailGrowsAtHousingRate) {
  const auto p = olg::testing::fundamental_config();
  const auto path = solve_path(p, TerminalKind::Fundamental, 200);
  ASSERT_EQ(path.size(), 201u);
  expect_structure(p, path);
  expect_no_arbitrage(path);
  const double g = std::pow(1.1, 0.5);
  EXPECT_NEAR(tail_growth(path.P), g, 1e-4);
  EXPECT_NEAR(tail_growth(path.r), g, 1e-4);
  EXPECT_EQ(path.terminal_kind, TerminalKind::Fundamental);
}

TEST(SolvePath, BubblyStructureAndGrowth) {
  const auto p = olg::testing::bubbly_config();
  const auto path = solve_path(p, TerminalKind::Bubbly, 200);
  expect_structure(p, path);
  expect_no_arbitrage(path);
  EXPECT_NEAR(tail_growth(path.P), 1.1, 1e-4);
  EXPECT_NEAR(tail_growth(path.r), std::pow(1.1, 0.5), 1e-3);
  // Shares approach 1/21 with the rent term, which fades like G^(gamma - 1).
  EXPECT_NEAR(path.s[200], 1.0 / 21.0, 1e-4);
  EXPECT_LT(std::abs(path.s[200] - 1.0 / 21.0), std::abs(path.s[100] - 1.0 / 21.0));
}

TEST(SolvePath, StructureOnRandomEconomies) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> beta(0.3, 0.7), sigma(0.5, 2.5), gamma(0.2, 0.9), G(1.02, 1.2),
      frac(0.3, 1.6);
  int solved = 0;
  for (int i = 0; i < 12; ++i) {
    const CesAggregator agg(beta(rng), sigma(rng));
    const double g = G(rng);
    const double w = frac(rng) * bubble_threshold(agg, g);
    const EconomyParams p(agg, HousingUtility(gamma(rng), 0.1), g, 1.0, w);
    const auto path = solve_path(p, default_terminal(p), 120);
    expect_structure(p, path);
    expect_no_arbitrage(path);
    ++solved;
  }
  EXPECT_EQ(solved, 12);
}

TEST(SolvePath, Gamma1KeepsShareAndPriceRentRatioConstant) {
  const auto p = economy(100, 100, 1.0);
  const auto path = solve_path(p, TerminalKind::Gamma1, 200);
  expect_structure(p, path);
  const double pr0 = path.P[0] / path.r[0];
  for (int t = 0; t <= 200; ++t) {
    EXPECT_NEAR(path.s[t], 1.0 / std::sqrt(11.0), 1e-12);
    EXPECT_NEAR(path.P[t] / path.r[t], pr0, 1e-10 * pr0);
  }
}

TEST(SolvePath, GammaAboveOneSharesRiseTowardOne) {
  const auto p = economy(95, 105, 1.5);
  const auto path = solve_path(p, TerminalKind::GammaAbove1, 200);
  expect_structure(p, path);
  for (int t = 150; t < 200; ++t) {
    EXPECT_LT(1.0 - path.s[t + 1], 1.0 - path.s[t]);
    EXPECT_GT(path.R[t + 1], path.R[t]);
  }
  EXPECT_GT(path.R[200], 10 * 1.1);
}

TEST(SolvePath, BackwardStabilityUnderTerminalPerturbation) {
  for (const auto& [p, kind] : {std::pair{olg::testing::bubbly_config(), TerminalKind::Bubbly}}) {
    const auto base = backward_shares(p.housing, p.agg, EndowmentPath::balanced(p.e1, p.e2, p.G), 150,
                                      bubbly_steady_state(p).s_star);
    for (double bump : {0.9, 1.1}) {
      const auto moved = backward_shares(p.housing, p.agg, EndowmentPath::balanced(p.e1, p.e2, p.G), 150,
                                         bump * bubbly_steady_state(p).s_star);
      EXPECT_LT(rel_diff(moved[0], base[0]), 1e-8);
    }
    (void)kind;
  }
  const auto f = olg::testing::fundamental_config();
  const auto e = EndowmentPath::balanced(f.e1, f.e2, f.G);
  const double seed = 1e-3;
  const auto base = backward_shares(f.housing, f.agg, e, 150, seed);
  for (double bump : {0.9, 1.1}) {
    const auto moved = backward_shares(f.housing, f.agg, e, 150, bump * seed);
    EXPECT_LT(rel_diff(moved[0], base[0]), 1e-8);
  }
}

TEST(SolvePath, AsymptoteSeedAgreesWithZeroTerminal) {
  const auto p = olg::testing::fundamental_config();
  SolverOptions seeded;
  seeded.fundamental_asymptote_seed = true;
  const auto a = solve_path(p, TerminalKind::Fundamental, 200);
  const auto b = solve_path(p, TerminalKind::Fundamental, 200, seeded);
  for (int t = 0; t <= 200; ++t) EXPECT_LT(rel_diff(a.P[t], b.P[t]), 1e-6) << "t=" << t;
}

TEST(SolvePath, RegimePreconditions) {
  EXPECT_EQ(kind_of([] { solve_path(olg::testing::fundamental_config(), TerminalKind::Bubbly, 50); }),
            ErrorKind::Nonexistence);
  EXPECT_EQ(kind_of([] { solve_path(olg::testing::bubbly_config(), TerminalKind::Fundamental, 50); }),
            ErrorKind::Nonexistence);
  EXPECT_EQ(kind_of([] { solve_path(olg::testing::bubbly_config(), TerminalKind::Gamma1, 50); }),
            ErrorKind::Branch);
  EXPECT_EQ(kind_of([] { solve_path(economy(1, 1, 1.5), TerminalKind::Bubbly, 50); }), ErrorKind::Branch);
  EXPECT_EQ(kind_of([] { solve_path(olg::testing::bubbly_config(), TerminalKind::Bubbly, 0); }),
            ErrorKind::Validation);
}

TEST(SolvePath, DefaultTerminalFollowsRegime) {
  EXPECT_EQ(default_terminal(economy(95, 105)), TerminalKind::Fundamental);
  EXPECT_EQ(default_terminal(economy(100, 98)), TerminalKind::Fundamental);
  EXPECT_EQ(default_terminal(economy(105, 95)), TerminalKind::Bubbly);
  EXPECT_EQ(default_terminal(economy(1, 1, 1.0)), TerminalKind::Gamma1);
  EXPECT_EQ(default_terminal(economy(1, 1, 2.0)), TerminalKind::GammaAbove1);
}

BeliefSchedule unanticipated_schedule() {
  const EndowmentPath before = EndowmentPath::balanced(95, 105, 1.1);
  const EndowmentPath mid({{0, 95, 105, 1.1}, {40, 105, 95, 1.1}});
  const EndowmentPath after({{0, 95, 105, 1.1}, {40, 105, 95, 1.1}, {80, 95, 105, 1.1}});
  return {{{0, before, TerminalKind::Fundamental}, {40, mid, TerminalKind::Bubbly},
           {80, after, TerminalKind::Fundamental}}};
}

TEST(SolveScenario, SingleAnnouncementEqualsSolvePath) {
  const auto p = olg::testing::bubbly_config();
  const auto e = EndowmentPath::balanced(105, 95, 1.1);
  const auto a = solve_path(p, e, TerminalKind::Bubbly, 120);
  const auto b = solve_scenario(p, {{{0, e, TerminalKind::Bubbly}}}, e, 120);
  EXPECT_EQ(a.P, b.P);
  EXPECT_EQ(a.R, b.R);
  EXPECT_EQ(a.q, b.q);
  EXPECT_TRUE(b.revision_dates.empty());
}

TEST(SolveScenario, StitchesBeliefsAndRepricesAtRevisions) {
  const auto p = olg::testing::fundamental_config();
  const auto schedule = unanticipated_schedule();
  const auto& realized = schedule.announcements.back().believed;
  const auto path = solve_scenario(p, schedule, realized, 200);
  EXPECT_EQ(path.revision_dates, (std::vector<int>{40, 80}));
  EXPECT_EQ(path.belief_index[39], 0);
  EXPECT_EQ(path.belief_index[40], 1);
  EXPECT_EQ(path.belief_index[80], 2);
  EXPECT_EQ(path.balanced_since, 80);
  expect_structure(p, path);
  expect_no_arbitrage(path);
  // The old at 39 sell at the revised price.
  EXPECT_EQ(path.R[39], path.S[40] / path.P[39]);
  const auto first = solve_path(p, schedule.announcements[0].believed, TerminalKind::Fundamental, 200);
  EXPECT_EQ(path.P[39], first.P[39]);
  EXPECT_NE(path.R[39], first.R[39]);
}

TEST(SolveScenario, ScheduleValidation) {
  const auto p = olg::testing::fundamental_config();
  const auto good = unanticipated_schedule();
  const auto& realized = good.announcements.back().believed;

  auto late_start = good;
  late_start.announcements[0].announce_date = 1;
  EXPECT_EQ(kind_of([&] { solve_scenario(p, late_start, realized, 100); }), ErrorKind::Validation);

  auto unordered = good;
  std::swap(unordered.announcements[1].announce_date, unordered.announcements[2].announce_date);
  EXPECT_EQ(kind_of([&] { solve_scenario(p, unordered, realized, 100); }), ErrorKind::Validation);

  // A belief contradicting realised endowments while it is held.
  auto wrong = good;
  wrong.announcements[0].believed = EndowmentPath::balanced(100, 105, 1.1);
  EXPECT_EQ(kind_of([&] { solve_scenario(p, wrong, realized, 100); }), ErrorKind::Validation);

  EXPECT_EQ(kind_of([&] { solve_scenario(p, BeliefSchedule{}, realized, 100); }), ErrorKind::Validation);
}

}  // namespace
