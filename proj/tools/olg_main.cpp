#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "olg_cli/commands.hpp"

namespace {

using nlohmann::json;

struct Args {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::string summary;
};

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("olg");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("OLG_LOG")) {
    const std::string v = level;
    if (v == "debug") spdlog::set_level(spdlog::level::debug);
    else if (v == "info") spdlog::set_level(spdlog::level::info);
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw olg::cli::ConfigError("--out", "cannot open " + path + " for writing");
  return f;
}

// Writes `text` to `path`, or to stdout when no path is given.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  auto f = open_out(path);
  f << text;
}

void write_run(const Args& args, const olg::cli::PathRun& run) {
  if (args.format == "json") {
    const json doc = {{"summary", run.summary}, {"path", olg::cli::path_to_json(run.path)}};
    emit(args.out, doc.dump(2) + "\n");
    if (!args.summary.empty()) emit(args.summary, run.summary.dump(2) + "\n");
    return;
  }
  std::ostringstream csv;
  olg::cli::write_path_csv(csv, run.path);
  emit(args.out, csv.str());
  std::string summary_path = args.summary;
  if (summary_path.empty() && !args.out.empty()) summary_path = args.out + ".summary.json";
  if (!summary_path.empty())
    emit(summary_path, run.summary.dump(2) + "\n");
  else
    std::cerr << run.summary.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"OLG housing economy: regimes, equilibrium paths, belief scenarios, credit and sweeps"};
  app.require_subcommand(1);
  Args args;
  const auto add_common = [&](CLI::App* sub, bool path_output) {
    sub->add_option("-c,--config", args.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", args.out, "output file (default: stdout)");
    if (path_output) {
      sub->add_option("-f,--format", args.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
      sub->add_option("--summary", args.summary, "summary JSON file (default: <out>.summary.json)");
    }
  };
  auto* regimes = app.add_subcommand("regimes", "thresholds, regime, steady states and welfare");
  auto* solve = app.add_subcommand("solve", "equilibrium path under perfect foresight");
  auto* scenario = app.add_subcommand("scenario", "realised path under dated announcements");
  auto* credit = app.add_subcommand("credit", "path of the economy with loan-to-income ratio lambda");
  auto* sweep = app.add_subcommand("sweep", "regime map over (1/gamma, 1/w)");
  add_common(regimes, false);
  add_common(solve, true);
  add_common(scenario, true);
  add_common(credit, true);
  add_common(sweep, false);
  unsigned threads = 0;
  sweep->add_option("-j,--threads", threads, "worker threads (default: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump() << '\n';
    return 2;
  }

  try {
    const auto cfg = olg::cli::load_config(args.config);
    spdlog::info("loaded {}", args.config);
    if (regimes->parsed()) {
      emit(args.out, olg::cli::cmd_regimes(cfg).dump(2) + "\n");
    } else if (solve->parsed()) {
      write_run(args, olg::cli::cmd_solve(cfg));
    } else if (scenario->parsed()) {
      write_run(args, olg::cli::cmd_scenario(cfg));
    } else if (credit->parsed()) {
      write_run(args, olg::cli::cmd_credit(cfg));
    } else if (sweep->parsed()) {
      const auto rows = olg::cli::cmd_sweep(cfg, threads);
      spdlog::info("sweep finished: {} cells", rows.size());
      std::ostringstream csv;
      olg::cli::write_sweep_csv(csv, rows);
      emit(args.out, csv.str());
    }
  } catch (const std::exception& e) {
    std::cerr << olg::cli::error_json(e).dump() << '\n';
    return 1;
  }
  return 0;
}
