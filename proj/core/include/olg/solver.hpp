#pragma once

// Equilibrium paths by backward induction on housing expenditure S_t.
//
// Given S_{t+1}, the young at t choose the unique S_t in (0, e^y_t) with
//   S_{t+1} c_z - S_t c_y + m c^gamma = 0,  (y, z) = (e^y_t - S_t, e^o_{t+1} + S_{t+1}),
// so a terminal S_N pins down the whole path S_0..S_N.

#include <cstddef>
#include <vector>

#include "olg/preferences.hpp"
#include "olg/regimes.hpp"

namespace olg {

/// Endowments (e^y_t, e^o_t) = (e1 G^t, e2 G^t) for start <= t < next start.
struct EndowmentSegment {
  int start;
  double e1;
  double e2;
  double G;

  friend bool operator==(const EndowmentSegment&, const EndowmentSegment&) = default;
};

class EndowmentPath {
 public:
  /// Segments must start at 0, have strictly increasing starts and positive
  /// levels; the last one is the balanced-growth tail and needs G > 1.
  explicit EndowmentPath(std::vector<EndowmentSegment> segments);

  static EndowmentPath balanced(double e1, double e2, double G);

  const std::vector<EndowmentSegment>& segments() const noexcept { return segments_; }
  const EndowmentSegment& segment_at(int t) const;
  const EndowmentSegment& final_segment() const noexcept { return segments_.back(); }
  int balanced_since() const noexcept { return segments_.back().start; }

  double young(int t) const;
  double old(int t) const;
  double log_young(int t) const;
  double log_old(int t) const;

  /// True when both endowments match on every date in [0, until).
  bool agrees_with(const EndowmentPath& other, int until) const;

 private:
  std::vector<EndowmentSegment> segments_;
};

enum class TerminalKind { Fundamental, Bubbly, Gamma1, GammaAbove1 };

struct SolverOptions {
  // Extra periods solved beyond the reported horizon and then discarded.
  // The backward map contracts, so the terminal guess washes out before T.
  int horizon_extension = 200;
  // Seed the fundamental terminal with the detrended asymptote instead of 0.
  bool fundamental_asymptote_seed = false;
  // Terminal share 1 - gap for gamma > 1, where s_t -> 1.
  double gamma_above1_gap = 1e-6;
  // Relative bracket width at which the per-period bisection stops;
  // 0 runs to adjacent doubles.
  double bisection_rel_tol = 0.0;
};

struct EquilibriumPath {
  std::vector<double> e_y;  // young endowment e^y_t
  std::vector<double> e_o;  // old endowment e^o_t
  std::vector<double> S;    // housing expenditure P_t + r_t
  std::vector<double> s;    // S_t / e^y_t
  std::vector<double> P;    // housing price
  std::vector<double> r;    // rent
  std::vector<double> R;    // gross risk-free rate between t and t+1
  std::vector<double> q;    // Arrow-Debreu price, q_0 = 1
  std::vector<double> log_q;  // log q_t; stays finite where q_t underflows
  std::vector<double> c_y;  // young consumption
  std::vector<double> c_o;  // old consumption
  std::vector<int> belief_index;
  std::vector<int> revision_dates;  // dates at which a belief revision took effect
  TerminalKind terminal_kind = TerminalKind::Fundamental;
  double G = 1.0;          // growth factor of the final balanced segment
  int balanced_since = 0;  // first date of the final balanced segment

  std::size_t size() const noexcept { return S.size(); }
  int horizon() const noexcept { return static_cast<int>(S.size()) - 1; }
};

/// One period of backward induction in levels. Returns S_t in (0, e_y).
double backward_step(const HousingUtility& housing, const Aggregator& agg, double S_next, double e_y,
                     double e_o_next, double rel_tol = 0.0);

/// Same step in shares of young income e^y_t = exp(log_e_y):
///   next = S_{t+1} / e^y_t, old_next = e^o_{t+1} / e^y_t.  Returns S_t / e^y_t.
double backward_step_share(const HousingUtility& housing, const Aggregator& agg, double next,
                           double old_next, double log_e_y, double rel_tol = 0.0);

/// Shares s_0..s_N from a terminal share s_N at date N.
std::vector<double> backward_shares(const HousingUtility& housing, const Aggregator& agg,
                                    const EndowmentPath& endowments, int terminal_date,
                                    double terminal_share, double rel_tol = 0.0);

/// Terminal kind the economy's long-run tail admits: fundamental when one
/// exists (w > w_f*), bubbly otherwise; the gamma >= 1 branches map to their own.
TerminalKind default_terminal(const EconomyParams& tail);

/// Terminal share s_N for the long-run tail economy, after checking that
/// the requested equilibrium exists.
double terminal_share(const EconomyParams& tail, TerminalKind kind, int terminal_date,
                      const SolverOptions& options);

/// Preferences from `params`, endowments from `endowments`; dates 0..T.
EquilibriumPath solve_path(const EconomyParams& params, const EndowmentPath& endowments,
                           TerminalKind terminal, int T, const SolverOptions& options = {});

/// Balanced-growth endowments taken from `params`.
EquilibriumPath solve_path(const EconomyParams& params, TerminalKind terminal, int T,
                           const SolverOptions& options = {});

struct Announcement {
  int announce_date;
  EndowmentPath believed;
  TerminalKind terminal;
};

struct BeliefSchedule {
  std::vector<Announcement> announcements;  // strictly increasing dates, first at 0
};

/// Realised equilibrium under dated belief revisions: on [a_k, a_{k+1}) the
/// path solved under belief k is used. R_t across a revision uses the
/// post-revision S_{t+1}; q_t chains the realised R_t.
EquilibriumPath solve_scenario(const EconomyParams& params, const BeliefSchedule& schedule,
                               const EndowmentPath& realized, int T,
                               const SolverOptions& options = {});

/// Residual of  beta S_{t+1} z^-sigma = (1-beta) S_t y^-sigma - m c^(gamma-sigma)
/// at date t, relative to the larger side.
double ces_dynamics_residual(const EconomyParams& params, const EquilibriumPath& path, int t);

std::string_view to_string(TerminalKind k);

}  // namespace olg
