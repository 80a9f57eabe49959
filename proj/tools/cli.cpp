#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pedsafe/config.hpp"
#include "pedsafe/log_io.hpp"
#include "pedsafe/report.hpp"
#include "pedsafe/safety.hpp"
#include "pedsafe/sensitivity.hpp"
#include "pedsafe/version.hpp"

namespace pedsafe::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ParamFlags {
  std::optional<int> w;
  std::optional<double> delta_min;
  std::optional<double> eps_prog;
  std::optional<double> rho_max;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--w", w, "evaluation window length");
    cmd.add_option("--delta-min", delta_min, "demand floor");
    cmd.add_option("--eps-prog", eps_prog, "progress floor");
    cmd.add_option("--rho-max", rho_max, "engagement/mastery coupling bound");
  }

  void apply(ConstraintParams& params) const {
    if (w) params.window_w = *w;
    if (delta_min) params.delta_min = *delta_min;
    if (eps_prog) params.eps_prog = *eps_prog;
    if (rho_max) params.rho_max = *rho_max;
  }
};

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

ConceptGraph load_curriculum(const std::string& path) {
  return ConceptGraph::load_file(path);
}

LogSet load_logs(const std::string& dir, const ConceptGraph& graph) {
  LogSet set;
  set.logs = read_log_directory(dir, graph);
  if (set.logs.empty()) throw std::runtime_error("no session logs under " + dir);
  return set;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int parallelism,
            const std::vector<std::string>& conditions, const std::vector<std::string>& profiles,
            const std::vector<std::uint64_t>& seeds, std::optional<int> session_length,
            const ParamFlags& flags, const std::string& curriculum_flag) {
  RunConfig cfg = config_path.empty() ? RunConfig() : load_run_config(config_path);
  if (!conditions.empty()) {
    cfg.matrix.conditions.clear();
    for (const auto& c : conditions) cfg.matrix.conditions.push_back(condition_from_name(c));
  }
  if (!profiles.empty()) cfg.matrix.profiles = profiles;
  if (!seeds.empty()) cfg.matrix.seeds = seeds;
  if (session_length) cfg.matrix.session_length = *session_length;
  flags.apply(cfg.params);
  if (!curriculum_flag.empty()) cfg.curriculum_path = curriculum_flag;

  const std::uint64_t offset = seed_offset_from_env();
  if (offset != 0) {
    for (auto& s : cfg.matrix.seeds) s += offset;
  }

  const ConceptGraph graph = load_curriculum(cfg.curriculum_path);

  LogSet set = run_matrix(cfg.matrix, graph, cfg.params, cfg.sim, cfg.agent, parallelism,
                          cfg.profile_set);

  // logs/<condition>/<profile>/<seed>.jsonl
  for (const auto& log : set.logs) {
    const fs::path path = fs::path(out_dir) / "logs" / log.header.condition /
                          log.header.profile / (std::to_string(log.header.seed) + ".jsonl");
    write_session_file(log, graph, path.string());
  }

  for (const auto& name : set.condition_names()) {
    const auto summary = summarize_condition(std::span<const SessionLog* const>(
        set.by_condition(name)));
    write_text_file((fs::path(out_dir) / ("summary_" + name + ".csv")).string(),
                    condition_summary_csv(summary));
  }

  const json manifest = {
      {"tool", "pedsafe"},
      {"version", std::string(kVersion)},
      {"timestamp", timestamp_utc()},
      {"config_path", config_path.empty() ? "<defaults>" : config_path},
      {"out_dir", out_dir},
      {"seed_offset", offset},
      {"parallelism", parallelism},
      {"snapshot", json::parse(run_config_to_json(cfg))},
  };
  write_text_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2));

  std::cout << "wrote " << set.logs.size() << " session logs to " << out_dir << "/logs\n";
  return 0;
}

int cmd_calibrate(const std::string& logs_dir, const ParamFlags& flags, double percentile,
                  const std::string& curriculum_path) {
  const ConceptGraph graph = load_curriculum(curriculum_path);
  ConstraintParams params;
  flags.apply(params);

  const LogSet all = load_logs(logs_dir, graph);
  std::vector<SessionLog> mas_logs;
  for (const auto& log : all.logs) {
    if (log.header.condition == "MAS") mas_logs.push_back(log);
  }
  if (mas_logs.empty()) {
    throw std::runtime_error("no MAS session logs under " + logs_dir);
  }

  std::size_t pool_size = 0;
  for (const auto& log : mas_logs) {
    pool_size += window_progress_gains(log, graph, params).size();
  }
  const double eps = calibrate_eps_prog(mas_logs, graph, params, percentile);
  std::printf("eps_prog = %.9g  (percentile %.6g of %zu pooled windows from %zu MAS sessions, W = %d)\n",
              eps, percentile, pool_size, mas_logs.size(), params.window_w);
  return 0;
}

int cmd_evaluate(const std::string& logs_dir, const std::string& out_dir, const ParamFlags& flags,
                 const std::string& curriculum_path) {
  const ConceptGraph graph = load_curriculum(curriculum_path);
  ConstraintParams params;
  flags.apply(params);

  const LogSet set = load_logs(logs_dir, graph);
  const auto evals = evaluate_conditions(set, graph, params);

  write_text_file((fs::path(out_dir) / "violations.csv").string(), violations_csv(evals));
  write_text_file((fs::path(out_dir) / "rhsi.csv").string(), rhsi_csv(evals));

  for (const auto& row : evals) {
    std::printf("%-5s v2=%.3f v3=%.3f v4=%.3f norm=%.3f v_pi=%.2f ratio=%.3f rhsi=%.3f\n",
                row.condition.c_str(), row.rates.v2, row.rates.v3, row.rates.v4, row.norm,
                row.v_pi, row.ratio, row.rhsi);
  }
  std::cout << "wrote violations.csv and rhsi.csv to " << out_dir << "\n";
  return 0;
}

int cmd_report(const std::string& logs_dir, const std::string& out_dir, const ParamFlags& flags,
               const std::string& curriculum_path) {
  const ConceptGraph graph = load_curriculum(curriculum_path);
  ConstraintParams params;
  flags.apply(params);

  const LogSet set = load_logs(logs_dir, graph);

  const auto evals = evaluate_conditions(set, graph, params);
  write_text_file((fs::path(out_dir) / "violations.csv").string(), violations_csv(evals));
  write_text_file((fs::path(out_dir) / "rhsi.csv").string(), rhsi_csv(evals));

  const auto comparisons = build_comparisons(set, graph, params);
  write_text_file((fs::path(out_dir) / "stats.csv").string(), stats_csv(comparisons));

  const auto cells = sensitivity_grid(set, graph, params);
  write_text_file((fs::path(out_dir) / "sensitivity.csv").string(),
                  sensitivity_csv(cells, params));
  write_text_file((fs::path(out_dir) / "sensitivity_heatmap.svg").string(),
                  sensitivity_heatmap_svg(cells));

  std::vector<PerturbationRow> perturbation;
  for (double scale : {1.0, 1.2, 0.8}) {
    const auto rows = perturb_and_rescore(set, scale, graph, params);
    perturbation.insert(perturbation.end(), rows.begin(), rows.end());
  }
  write_text_file((fs::path(out_dir) / "perturbation.csv").string(),
                  perturbation_csv(perturbation));

  write_text_file((fs::path(out_dir) / "rhsi_boxplot.svg").string(),
                  rhsi_boxplot_svg(set, graph, params));

  std::cout << "wrote stats.csv, sensitivity.csv, perturbation.csv and figures to " << out_dir
            << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"pedagogical-safety simulation and evaluation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string config_path;
  std::string out_dir = "out";
  std::string logs_dir;
  std::string curriculum = "curriculum/python27.json";
  int parallelism = 1;
  std::vector<std::string> conditions;
  std::vector<std::string> profiles;
  std::vector<std::uint64_t> seeds;
  std::optional<int> session_length;
  double percentile = 25.0;
  ParamFlags flags;

  auto* run_cmd = app.add_subcommand("run", "run the experiment matrix and persist session logs");
  run_cmd->add_option("--config", config_path, "run configuration document (JSON)");
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--parallelism", parallelism, "worker threads")->check(CLI::PositiveNumber);
  run_cmd->add_option("--conditions", conditions, "subset of conditions")->delimiter(',');
  run_cmd->add_option("--profiles", profiles, "subset of learner profiles")->delimiter(',');
  run_cmd->add_option("--seeds", seeds, "seed list")->delimiter(',');
  run_cmd->add_option("--session-length", session_length, "interactions per session");
  run_cmd->add_option("--curriculum", curriculum, "curriculum document");
  flags.add_to(*run_cmd);

  auto* cal_cmd = app.add_subcommand("calibrate", "calibrate the progress floor from MAS logs");
  cal_cmd->add_option("--logs", logs_dir, "directory holding MAS session logs")->required();
  cal_cmd->add_option("--percentile", percentile, "calibration percentile");
  cal_cmd->add_option("--curriculum", curriculum, "curriculum document");
  ParamFlags cal_flags;
  cal_flags.add_to(*cal_cmd);

  auto* eval_cmd = app.add_subcommand("evaluate", "score logged sessions against the constraints");
  eval_cmd->add_option("--logs", logs_dir, "log directory")->required();
  eval_cmd->add_option("--out", out_dir, "output directory");
  eval_cmd->add_option("--curriculum", curriculum, "curriculum document");
  ParamFlags eval_flags;
  eval_flags.add_to(*eval_cmd);

  auto* report_cmd = app.add_subcommand("report", "full analysis bundle: stats, grid, figures");
  report_cmd->add_option("--logs", logs_dir, "log directory")->required();
  report_cmd->add_option("--out", out_dir, "output directory");
  report_cmd->add_option("--curriculum", curriculum, "curriculum document");
  ParamFlags report_flags;
  report_flags.add_to(*report_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run_cmd->parsed()) {
      return cmd_run(config_path, out_dir, parallelism, conditions, profiles, seeds,
                     session_length, flags, curriculum);
    }
    if (cal_cmd->parsed()) {
      return cmd_calibrate(logs_dir, cal_flags, percentile, curriculum);
    }
    if (eval_cmd->parsed()) {
      return cmd_evaluate(logs_dir, out_dir, eval_flags, curriculum);
    }
    if (report_cmd->parsed()) {
      return cmd_report(logs_dir, out_dir, report_flags, curriculum);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pedsafe::cli
