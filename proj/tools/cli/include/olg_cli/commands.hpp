#pragma once

#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "olg/solver.hpp"
#include "olg_cli/config.hpp"

namespace olg::cli {

/// 12 significant digits, dot decimal separator, shortest exponent form.
std::string format_number(double x);

inline constexpr const char* kPathCsvHeader = "t,e_y,e_o,S,s,P,r,R,q,c_y,c_o,belief_index";
inline constexpr const char* kSweepCsvHeader =
    "gamma_inv,w_inv,regime,w_f_star,w_b_star,s_star,lambda1,efficient_fundamental";

void write_path_csv(std::ostream& out, const EquilibriumPath& path);
nlohmann::json path_to_json(const EquilibriumPath& path);

struct PathRun {
  EquilibriumPath path;
  nlohmann::json summary;  // config echo, regime, bubble and efficiency verdicts
};

/// Belief schedule and realised endowments implied by the announcements.
struct ScenarioPlan {
  BeliefSchedule schedule;
  EndowmentPath realized;
};
ScenarioPlan plan_scenario(const RunConfig& cfg);

nlohmann::json cmd_regimes(const RunConfig& cfg);
PathRun cmd_solve(const RunConfig& cfg);
PathRun cmd_scenario(const RunConfig& cfg);
PathRun cmd_credit(const RunConfig& cfg);

struct SweepRow {
  double gamma_inv;
  double w_inv;
  RegimeTag regime;
  std::optional<double> w_f_star;
  std::optional<double> w_b_star;
  std::optional<double> s_star;   // bubbly steady state where one exists, else the fundamental one
  std::optional<double> lambda1;  // of that steady state
  std::optional<bool> efficient_fundamental;
};

/// Grid over (1/gamma, 1/w) with the other parameters from `cfg`; cells run
/// on `threads` workers (0: hardware concurrency), rows in grid order.
std::vector<SweepRow> cmd_sweep(const RunConfig& cfg, unsigned threads = 0);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// {"error": {"kind": ..., "message": ..., "field": ...}}
nlohmann::json error_json(const std::exception& e);

}  // namespace olg::cli
