#pragma once

// Run configuration: one flat JSON object per run.
//
//   economy      beta, sigma, gamma, m, G, e1, e2            (required)
//   solver       T, tail_window, tol, horizon_extension,
//                fundamental_asymptote_seed                  (optional)
//   payloads     terminal, announcements, lambda,
//                gamma_inv_min/max, w_inv_min/max, resolution (optional)

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "olg/errors.hpp"
#include "olg/regimes.hpp"
#include "olg/solver.hpp"

namespace olg::cli {

/// Validation failure tied to a config field such as "announcements[1].e1".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(ErrorKind::Validation, field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// From announce_date on, agents expect endowment levels (e1, e2) from
/// effective_date on. Equal dates make the change a surprise.
struct AnnouncementSpec {
  int announce_date = 0;
  int effective_date = 0;
  double e1 = 0.0;
  double e2 = 0.0;
  std::optional<TerminalKind> terminal;  // empty: chosen from the believed long run

  friend bool operator==(const AnnouncementSpec&, const AnnouncementSpec&) = default;
};

struct SweepGrid {
  double gamma_inv_min = 0.5;
  double gamma_inv_max = 4.0;
  double w_inv_min = 0.8;
  double w_inv_max = 1.2;
  int resolution = 41;

  friend bool operator==(const SweepGrid&, const SweepGrid&) = default;
};

struct RunConfig {
  double beta = 0.0;
  double sigma = 0.0;
  double gamma = 0.0;
  double m = 0.0;
  double G = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;

  int T = 200;
  int tail_window = 20;
  double tol = 1e-3;  // delta of the tail ratio tests
  int horizon_extension = 200;
  bool fundamental_asymptote_seed = false;

  std::optional<TerminalKind> terminal;  // empty: chosen from the regime
  std::vector<AnnouncementSpec> announcements;
  std::optional<double> lambda;
  SweepGrid sweep;

  EconomyParams economy() const;
  SolverOptions solver_options() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

std::optional<TerminalKind> parse_terminal(const std::string& text);

}  // namespace olg::cli
