#include "olg_cli/commands.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include "olg/analytics.hpp"
#include "olg/errors.hpp"

namespace olg::cli {

namespace {

using nlohmann::json;

EconomyParams with_levels(const EconomyParams& p, const EndowmentSegment& seg) {
  return EconomyParams(p.agg, p.housing, seg.G, seg.e1, seg.e2);
}

TerminalKind terminal_for(const EconomyParams& prefs, const EndowmentPath& e, std::optional<TerminalKind> chosen) {
  return chosen ? *chosen : default_terminal(with_levels(prefs, e.final_segment()));
}

json steady_state_json(const SteadyStateReport& r) {
  json j = {{"kind", to_string(r.kind)},
            {"s_star", r.s_star},
            {"lambda1", r.lambda1},
            {"lambda2", r.lambda2},
            {"determinacy", to_string(r.determinacy)},
            {"numerator", r.numerator},
            {"denominator", r.denominator},
            {"eis", r.eis},
            {"warnings", r.warnings}};
  j["eis_condition"] = r.eis_condition ? json(*r.eis_condition) : json(nullptr);
  return j;
}

// Runs `fn` and returns its JSON, or {"error": ...} when the object does not exist.
template <class F>
json guarded(F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return error_json(e)["error"];
  }
}

json summarize(const RunConfig& cfg, const EconomyParams& economy, const EquilibriumPath& path) {
  json s;
  s["config"] = to_json(cfg);
  s["regime"] = to_string(classify(economy).tag);
  s["terminal"] = to_string(path.terminal_kind);
  s["T"] = path.horizon();
  s["revision_dates"] = path.revision_dates;
  s["bubble"] = guarded([&] {
    const auto v = detect_bubble(path, cfg.tol, cfg.tail_window);
    return json{{"classification", to_string(v.classification)},
                {"is_bubble", v.is_bubble()},
                {"ratio_estimate", v.ratio_estimate},
                {"rent_price_sum", v.partial_sums.back()},
                {"fundamental_value_0", v.fundamental_value_0},
                {"remainder", v.remainder},
                {"bubble_component_0", v.bubble_component_0},
                {"tvc_tail", v.tvc_tail}};
  });
  s["efficiency"] = guarded([&] {
    const auto v = efficiency_test(path, cfg.tol, cfg.tail_window);
    return json{{"verdict", to_string(v.verdict)},
                {"rate_estimate", v.rate_estimate},
                {"tail_share_max", v.tail_share_max},
                {"applicability", to_string(v.applicability)},
                {"criterion_sum", v.criterion_sums.back()}};
  });
  s["tail_growth"] = guarded([&] {
    return json{{"P", tail_growth(path.P, cfg.tail_window)}, {"r", tail_growth(path.r, cfg.tail_window)}};
  });
  return s;
}

std::string cell(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

SweepRow sweep_cell(const RunConfig& cfg, double gamma_inv, double w_inv) {
  const EconomyParams p(CesAggregator(cfg.beta, cfg.sigma), HousingUtility(1.0 / gamma_inv, cfg.m), cfg.G, 1.0,
                        1.0 / w_inv);
  SweepRow row{gamma_inv, w_inv, classify(p).tag, {}, {}, {}, {}, {}};
  switch (p.housing.branch()) {
    case GammaBranch::Above1: return row;
    case GammaBranch::Equal1: {
      const auto ss = gamma1_steady_state(p);
      row.s_star = ss.s_star;
      row.lambda1 = ss.lambda1;
      return row;
    }
    case GammaBranch::Below1: break;
  }
  const auto th = thresholds(p);
  row.w_f_star = th.w_f_star;
  row.w_b_star = th.w_b_star;
  const double w = p.w();
  if (w < th.w_b_star) {
    const auto ss = bubbly_steady_state(p);
    row.s_star = ss.s_star;
    row.lambda1 = ss.lambda1;
  } else {
    const auto ss = fundamental_steady_state(p);
    row.s_star = ss.s_star;
    row.lambda1 = ss.lambda1;
  }
  if (w > th.w_f_star)
    row.efficient_fundamental = welfare_class(p, LongRunKind::FundamentalLongRun) == Welfare::Efficient;
  return row;
}

double grid_point(double lo, double hi, int i, int n) {
  return i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_path_csv(std::ostream& out, const EquilibriumPath& path) {
  out << kPathCsvHeader << '\n';
  for (std::size_t t = 0; t < path.size(); ++t) {
    out << t;
    for (const auto* v : {&path.e_y, &path.e_o, &path.S, &path.s, &path.P, &path.r, &path.R, &path.q, &path.c_y,
                          &path.c_o})
      out << ',' << format_number((*v)[t]);
    out << ',' << path.belief_index[t] << '\n';
  }
}

json path_to_json(const EquilibriumPath& path) {
  std::vector<int> t(path.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<int>(i);
  return {{"t", t},     {"e_y", path.e_y}, {"e_o", path.e_o}, {"S", path.S},     {"s", path.s},
          {"P", path.P}, {"r", path.r},     {"R", path.R},     {"q", path.q},     {"c_y", path.c_y},
          {"c_o", path.c_o}, {"belief_index", path.belief_index}};
}

ScenarioPlan plan_scenario(const RunConfig& cfg) {
  const auto prefs = cfg.economy();
  std::vector<EndowmentSegment> segments{{0, cfg.e1, cfg.e2, cfg.G}};
  std::vector<Announcement> beliefs;
  if (cfg.announcements.empty() || cfg.announcements.front().announce_date > 0) {
    const EndowmentPath initial(segments);
    beliefs.push_back({0, initial, terminal_for(prefs, initial, cfg.terminal)});
  }
  for (const auto& a : cfg.announcements) {
    const EndowmentSegment seg{a.effective_date, a.e1, a.e2, cfg.G};
    if (a.effective_date == 0)
      segments.front() = seg;
    else
      segments.push_back(seg);
    const EndowmentPath believed(segments);
    beliefs.push_back({a.announce_date, believed, terminal_for(prefs, believed, a.terminal)});
  }
  return {BeliefSchedule{std::move(beliefs)}, EndowmentPath(segments)};
}

json cmd_regimes(const RunConfig& cfg) {
  const auto p = cfg.economy();
  const auto regime = classify(p);
  json j;
  j["config"] = to_json(cfg);
  j["w"] = p.w();
  j["regime"] = to_string(regime.tag);
  j["boundary"] = to_string(regime.boundary);
  j["w_f_star"] = nullptr;
  j["w_b_star"] = nullptr;
  json steady = json::object();
  json welfare = json::object();
  if (p.housing.branch() == GammaBranch::Below1) {
    const auto th = thresholds(p);
    j["w_f_star"] = th.w_f_star;
    j["w_b_star"] = th.w_b_star;
    steady["fundamental"] = guarded([&] { return steady_state_json(fundamental_steady_state(p)); });
    steady["bubbly"] = guarded([&] { return steady_state_json(bubbly_steady_state(p)); });
    welfare["fundamental_long_run"] =
        guarded([&] { return json(to_string(welfare_class(p, LongRunKind::FundamentalLongRun))); });
    welfare["bubbly_long_run"] =
        guarded([&] { return json(to_string(welfare_class(p, LongRunKind::BubblyLongRun))); });
  } else if (p.housing.branch() == GammaBranch::Equal1) {
    steady["gamma1"] = guarded([&] { return steady_state_json(gamma1_steady_state(p)); });
  }
  j["steady_states"] = steady;
  j["welfare"] = welfare;
  return j;
}

PathRun cmd_solve(const RunConfig& cfg) {
  const auto p = cfg.economy();
  const auto endowments = EndowmentPath::balanced(p.e1, p.e2, p.G);
  auto path = solve_path(p, endowments, terminal_for(p, endowments, cfg.terminal), cfg.T, cfg.solver_options());
  auto summary = summarize(cfg, p, path);
  return {std::move(path), std::move(summary)};
}

PathRun cmd_scenario(const RunConfig& cfg) {
  const auto p = cfg.economy();
  const auto plan = plan_scenario(cfg);
  auto path = solve_scenario(p, plan.schedule, plan.realized, cfg.T, cfg.solver_options());
  auto summary = summarize(cfg, with_levels(p, plan.realized.final_segment()), path);
  return {std::move(path), std::move(summary)};
}

PathRun cmd_credit(const RunConfig& cfg) {
  if (!cfg.lambda) throw ConfigError("lambda", "missing required field for the credit command");
  const auto report = credit_transform(cfg.economy(), *cfg.lambda);
  const auto& p = report.effective;
  const auto endowments = EndowmentPath::balanced(p.e1, p.e2, p.G);
  auto path = solve_path(p, endowments, terminal_for(p, endowments, cfg.terminal), cfg.T, cfg.solver_options());
  auto summary = summarize(cfg, p, path);
  summary["credit"] = {{"lambda", report.lambda},
                       {"w_tilde", report.w_tilde},
                       {"e1_tilde", p.e1},
                       {"e2_tilde", p.e2},
                       {"lower_bound", report.lower_bound},
                       {"condition_holds", report.condition_holds},
                       {"price_coefficient", report.price_coefficient},
                       {"warnings", report.warnings}};
  return {std::move(path), std::move(summary)};
}

std::vector<SweepRow> cmd_sweep(const RunConfig& cfg, unsigned threads) {
  const auto& g = cfg.sweep;
  const int n = g.resolution;
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  std::vector<SweepRow> rows(cells);
  std::vector<std::exception_ptr> errors(cells);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < cells; k = next++) {
      const int i = static_cast<int>(k) / n, j = static_cast<int>(k) % n;
      try {
        rows[k] = sweep_cell(cfg, grid_point(g.gamma_inv_min, g.gamma_inv_max, i, n),
                             grid_point(g.w_inv_min, g.w_inv_max, j, n));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.gamma_inv) << ',' << format_number(r.w_inv) << ',' << to_string(r.regime) << ','
        << cell(r.w_f_star) << ',' << cell(r.w_b_star) << ',' << cell(r.s_star) << ',' << cell(r.lambda1) << ',';
    if (r.efficient_fundamental) out << (*r.efficient_fundamental ? "true" : "false");
    out << '\n';
  }
}

json error_json(const std::exception& e) {
  json err = {{"message", e.what()}};
  if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) {
    err["kind"] = to_string(ce->kind());
    err["field"] = ce->field();
  } else if (const auto* oe = dynamic_cast<const Error*>(&e)) {
    err["kind"] = to_string(oe->kind());
  } else {
    err["kind"] = "internal";
  }
  return {{"error", err}};
}

}  // namespace olg::cli
