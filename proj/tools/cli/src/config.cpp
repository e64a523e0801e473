#include "olg_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace olg::cli {

namespace {

using nlohmann::json;

double number(const json& obj, const std::string& key, const std::string& field) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(field, "must be finite");
  return x;
}

int integer(const json& obj, const std::string& key, const std::string& field) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  return v.get<int>();
}

void require_field(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

const std::set<std::string> kTopLevelKeys = {
    "beta", "sigma", "gamma", "m", "G", "e1", "e2", "T", "tail_window", "tol", "horizon_extension",
    "fundamental_asymptote_seed", "terminal", "announcements", "lambda", "gamma_inv_min", "gamma_inv_max",
    "w_inv_min", "w_inv_max", "resolution"};

const std::set<std::string> kAnnouncementKeys = {"announce_date", "effective_date", "e1", "e2", "terminal"};

TerminalKind terminal_field(const json& obj, const std::string& field) {
  const auto& v = obj.at("terminal");
  if (!v.is_string()) throw ConfigError(field, "expected a string");
  const auto kind = parse_terminal(v.get<std::string>());
  if (!kind) throw ConfigError(field, "expected one of Fundamental, Bubbly, Gamma1, GammaAbove1");
  return *kind;
}

}  // namespace

std::optional<TerminalKind> parse_terminal(const std::string& text) {
  for (auto k : {TerminalKind::Fundamental, TerminalKind::Bubbly, TerminalKind::Gamma1, TerminalKind::GammaAbove1})
    if (text == to_string(k)) return k;
  return std::nullopt;
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (!kTopLevelKeys.count(key)) throw ConfigError(key, "unknown field");

  RunConfig c;
  for (const char* key : {"beta", "sigma", "gamma", "m", "G", "e1", "e2"})
    if (!doc.contains(key)) throw ConfigError(key, "missing required field");
  c.beta = number(doc, "beta", "beta");
  c.sigma = number(doc, "sigma", "sigma");
  c.gamma = number(doc, "gamma", "gamma");
  c.m = number(doc, "m", "m");
  c.G = number(doc, "G", "G");
  c.e1 = number(doc, "e1", "e1");
  c.e2 = number(doc, "e2", "e2");
  require_field(c.beta > 0.0 && c.beta < 1.0, "beta", "must lie in (0, 1)");
  require_field(c.sigma > 0.0, "sigma", "must be positive");
  require_field(c.gamma > 0.0, "gamma", "must be positive");
  require_field(c.m > 0.0, "m", "must be positive");
  require_field(c.G > 1.0, "G", "must exceed 1");
  require_field(c.e1 > 0.0, "e1", "must be positive");
  require_field(c.e2 > 0.0, "e2", "must be positive");

  if (doc.contains("T")) c.T = integer(doc, "T", "T");
  require_field(c.T >= 1, "T", "must be at least 1");
  if (doc.contains("tail_window")) c.tail_window = integer(doc, "tail_window", "tail_window");
  require_field(c.tail_window >= 1 && 2 * c.tail_window <= c.T + 1, "tail_window",
                "must lie in [1, (T + 1) / 2]");
  if (doc.contains("tol")) c.tol = number(doc, "tol", "tol");
  require_field(c.tol > 0.0 && c.tol < 1.0, "tol", "must lie in (0, 1)");
  if (doc.contains("horizon_extension"))
    c.horizon_extension = integer(doc, "horizon_extension", "horizon_extension");
  require_field(c.horizon_extension >= 1, "horizon_extension", "must be at least 1");
  if (doc.contains("fundamental_asymptote_seed")) {
    const auto& v = doc.at("fundamental_asymptote_seed");
    require_field(v.is_boolean(), "fundamental_asymptote_seed", "expected a boolean");
    c.fundamental_asymptote_seed = v.get<bool>();
  }
  if (doc.contains("terminal")) c.terminal = terminal_field(doc, "terminal");

  if (doc.contains("announcements")) {
    const auto& list = doc.at("announcements");
    require_field(list.is_array(), "announcements", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = "announcements[" + std::to_string(i) + "]";
      const auto& item = list[i];
      require_field(item.is_object(), at, "expected an object");
      for (const auto& [key, _] : item.items())
        if (!kAnnouncementKeys.count(key)) throw ConfigError(at + "." + key, "unknown field");
      for (const char* key : {"announce_date", "effective_date", "e1", "e2"})
        if (!item.contains(key)) throw ConfigError(at + "." + key, "missing required field");
      AnnouncementSpec a;
      a.announce_date = integer(item, "announce_date", at + ".announce_date");
      a.effective_date = integer(item, "effective_date", at + ".effective_date");
      a.e1 = number(item, "e1", at + ".e1");
      a.e2 = number(item, "e2", at + ".e2");
      if (item.contains("terminal")) a.terminal = terminal_field(item, at + ".terminal");
      require_field(a.announce_date >= 0 && a.announce_date <= c.T, at + ".announce_date", "must lie in [0, T]");
      require_field(a.effective_date >= a.announce_date, at + ".effective_date",
                    "must not precede announce_date");
      require_field(a.e1 > 0.0, at + ".e1", "must be positive");
      require_field(a.e2 > 0.0, at + ".e2", "must be positive");
      if (!c.announcements.empty()) {
        const auto& prev = c.announcements.back();
        require_field(a.announce_date > prev.announce_date, at + ".announce_date",
                      "must exceed the previous announce_date");
        require_field(a.effective_date > prev.effective_date, at + ".effective_date",
                      "must exceed the previous effective_date");
      }
      c.announcements.push_back(a);
    }
  }

  if (doc.contains("lambda")) {
    c.lambda = number(doc, "lambda", "lambda");
    require_field(*c.lambda >= 0.0, "lambda", "must be non-negative");
  }

  auto& g = c.sweep;
  if (doc.contains("gamma_inv_min")) g.gamma_inv_min = number(doc, "gamma_inv_min", "gamma_inv_min");
  if (doc.contains("gamma_inv_max")) g.gamma_inv_max = number(doc, "gamma_inv_max", "gamma_inv_max");
  if (doc.contains("w_inv_min")) g.w_inv_min = number(doc, "w_inv_min", "w_inv_min");
  if (doc.contains("w_inv_max")) g.w_inv_max = number(doc, "w_inv_max", "w_inv_max");
  if (doc.contains("resolution")) g.resolution = integer(doc, "resolution", "resolution");
  require_field(g.gamma_inv_min > 0.0, "gamma_inv_min", "must be positive");
  require_field(g.gamma_inv_max > g.gamma_inv_min, "gamma_inv_max", "must exceed gamma_inv_min");
  require_field(g.w_inv_min > 0.0, "w_inv_min", "must be positive");
  require_field(g.w_inv_max > g.w_inv_min, "w_inv_max", "must exceed w_inv_min");
  require_field(g.resolution >= 2, "resolution", "must be at least 2");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  json doc = {{"beta", c.beta},
              {"sigma", c.sigma},
              {"gamma", c.gamma},
              {"m", c.m},
              {"G", c.G},
              {"e1", c.e1},
              {"e2", c.e2},
              {"T", c.T},
              {"tail_window", c.tail_window},
              {"tol", c.tol},
              {"horizon_extension", c.horizon_extension},
              {"fundamental_asymptote_seed", c.fundamental_asymptote_seed},
              {"gamma_inv_min", c.sweep.gamma_inv_min},
              {"gamma_inv_max", c.sweep.gamma_inv_max},
              {"w_inv_min", c.sweep.w_inv_min},
              {"w_inv_max", c.sweep.w_inv_max},
              {"resolution", c.sweep.resolution}};
  if (c.terminal) doc["terminal"] = std::string(to_string(*c.terminal));
  if (c.lambda) doc["lambda"] = *c.lambda;
  if (!c.announcements.empty()) {
    doc["announcements"] = json::array();
    for (const auto& a : c.announcements) {
      json item = {{"announce_date", a.announce_date},
                   {"effective_date", a.effective_date},
                   {"e1", a.e1},
                   {"e2", a.e2}};
      if (a.terminal) item["terminal"] = std::string(to_string(*a.terminal));
      doc["announcements"].push_back(item);
    }
  }
  return doc;
}

EconomyParams RunConfig::economy() const {
  return EconomyParams(CesAggregator(beta, sigma), HousingUtility(gamma, m), G, e1, e2);
}

SolverOptions RunConfig::solver_options() const {
  SolverOptions o;
  o.horizon_extension = horizon_extension;
  o.fundamental_asymptote_seed = fundamental_asymptote_seed;
  return o;
}

}  // namespace olg::cli
