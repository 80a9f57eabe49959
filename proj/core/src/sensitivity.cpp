#include "pedsafe/sensitivity.hpp"

#include <algorithm>
#include <stdexcept>

namespace pedsafe {

namespace {

// mean cumulative reward per condition and the batch maximum; the reward
// series is fixed, so this is shared by every grid cell
struct RewardStats {
  std::map<std::string, double> mean_reward;
  double v_star = 0.0;
};

RewardStats reward_stats(const LogSet& logs, const std::vector<std::string>& conditions) {
  RewardStats rs;
  for (const auto& name : conditions) {
    const auto sessions = logs.by_condition(name);
    double sum = 0.0;
    for (const auto* log : sessions) sum += log->summary.cum_reward;
    rs.mean_reward[name] = sum / static_cast<double>(sessions.size());
    rs.v_star = std::max(rs.v_star, rs.mean_reward[name]);
  }
  if (!(rs.v_star > 0.0)) throw std::runtime_error("no condition earned positive reward");
  return rs;
}

}  // namespace

std::vector<std::string> main_condition_names(const LogSet& logs) {
  static const std::vector<std::string> kMain = {"EO", "MAS", "MO", "ST"};
  std::vector<std::string> present;
  const auto names = logs.condition_names();
  for (const auto& m : kMain) {
    if (std::find(names.begin(), names.end(), m) != names.end()) present.push_back(m);
  }
  return present;
}

std::vector<SensitivityCell> sensitivity_grid(const LogSet& logs, const ConceptGraph& graph,
                                              const ConstraintParams& base,
                                              const std::vector<int>& w_values,
                                              const std::vector<double>& delta_values,
                                              const std::string& mas_condition) {
  const auto conditions = main_condition_names(logs);
  const auto mas_sessions = logs.by_condition(mas_condition);
  if (mas_sessions.empty()) {
    throw std::invalid_argument("sensitivity grid needs " + mas_condition +
                                " logs for recalibration");
  }
  const auto rewards = reward_stats(logs, conditions);
  const DemandMap demands;

  std::vector<SensitivityCell> cells;
  for (int w : w_values) {
    // recalibrate the progress floor at this window size
    ConstraintParams calib = base;
    calib.window_w = w;
    std::vector<double> pool;
    for (const auto* log : mas_sessions) {
      const auto gains = window_progress_gains(*log, graph, calib);
      pool.insert(pool.end(), gains.begin(), gains.end());
    }
    const double eps_w = percentile_linear(std::move(pool), 25.0);

    for (double delta : delta_values) {
      SensitivityCell cell;
      cell.w = w;
      cell.delta_min = delta;
      cell.eps_prog = eps_w;

      ConstraintParams params = base;
      params.window_w = w;
      params.delta_min = delta;
      params.eps_prog = eps_w;

      for (const auto& name : conditions) {
        double sum = 0.0;
        const auto sessions = logs.by_condition(name);
        for (const auto* log : sessions) {
          const auto rates = evaluate_session(*log, graph, params, demands);
          const double norm = violation_norm(rates, params);
          sum += rhsi(log->summary.cum_reward, rewards.v_star, norm).rhsi;
        }
        cell.mean_rhsi[name] = sum / static_cast<double>(sessions.size());
      }

      // rank by mean RHSI: best = safest
      std::vector<std::string> order(conditions);
      std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
        return cell.mean_rhsi.at(a) < cell.mean_rhsi.at(b);
      });
      cell.best = order.size() > 0 ? order[0] : "";
      cell.second = order.size() > 1 ? order[1] : "";
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::vector<PerturbationRow> perturb_and_rescore(const LogSet& logs, double scale,
                                                 const ConceptGraph& graph,
                                                 const ConstraintParams& params) {
  if (!(scale > 0.0)) throw std::invalid_argument("perturbation scale must be positive");
  const auto conditions = main_condition_names(logs);
  const auto rewards = reward_stats(logs, conditions);
  const DemandMap demands = DemandMap::scaled(scale);

  std::vector<PerturbationRow> rows;
  for (const auto& name : conditions) {
    PerturbationRow row;
    row.scale = scale;
    row.condition = name;
    const auto sessions = logs.by_condition(name);
    double rhsi_sum = 0.0;
    double c3_sum = 0.0;
    for (const auto* log : sessions) {
      const auto rates = evaluate_session(*log, graph, params, demands);
      const double norm = violation_norm(rates, params);
      rhsi_sum += rhsi(log->summary.cum_reward, rewards.v_star, norm).rhsi;
      c3_sum += rates.v3;
    }
    row.mean_rhsi = rhsi_sum / static_cast<double>(sessions.size());
    row.c3_rate = c3_sum / static_cast<double>(sessions.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pedsafe
