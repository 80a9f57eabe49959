#include "pedsafe/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pedsafe {

ExperimentMatrix ExperimentMatrix::defaults() {
  ExperimentMatrix m;
  m.conditions.assign(kAllConditions.begin(), kAllConditions.end());
  for (const auto& p : default_profiles()) m.profiles.push_back(p.name);
  for (std::uint64_t s = 0; s < 10; ++s) m.seeds.push_back(s);
  m.session_length = 150;
  return m;
}

std::vector<const SessionLog*> LogSet::by_condition(std::string_view condition) const {
  std::vector<const SessionLog*> out;
  for (const auto& log : logs) {
    if (log.header.condition == condition) out.push_back(&log);
  }
  return out;
}

std::vector<std::string> LogSet::condition_names() const {
  std::vector<std::string> names;
  for (const auto& log : logs) {
    if (std::find(names.begin(), names.end(), log.header.condition) == names.end()) {
      names.push_back(log.header.condition);
    }
  }
  return names;
}

LogSet run_matrix(const ExperimentMatrix& matrix, const ConceptGraph& graph,
                  const ConstraintParams& params, const SimConfig& sim, const AgentConfig& agent,
                  int parallelism) {
  struct Job {
    Condition condition;
    std::string profile;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  jobs.reserve(matrix.session_count());
  for (Condition c : matrix.conditions) {
    for (const auto& p : matrix.profiles) {
      for (std::uint64_t s : matrix.seeds) jobs.push_back({c, p, s});
    }
  }

  LogSet out;
  out.logs.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size() || failed.load()) break;
      const Job& job = jobs[i];
      try {
        const auto cfg = condition_config(job.condition, params);
        const auto& profile = profile_by_name(job.profile);
        out.logs[i] =
            run_session(cfg, profile, job.seed, graph, params, sim, agent, matrix.session_length);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failed.store(true);
        failure = std::string("session (") + condition_name(job.condition) + ", " + job.profile +
                  ", seed " + std::to_string(job.seed) + ") failed: " + e.what();
      }
    }
  };

  const int workers = std::max(1, std::min<int>(parallelism, static_cast<int>(jobs.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error(failure);
  return out;
}

ConditionSummary summarize_condition(std::span<const SessionLog* const> logs) {
  if (logs.empty()) throw std::invalid_argument("summarize_condition: no sessions");
  ConditionSummary s;
  s.condition = logs.front()->header.condition;
  s.sessions = static_cast<int>(logs.size());

  std::array<std::int64_t, kNumActions> counts{};
  std::int64_t total_steps = 0;
  double demand_sum = 0.0;
  double cum_reward = 0.0;
  double cum_eng = 0.0;
  double cum_mas = 0.0;
  std::map<std::string, std::pair<double, int>> delta_k;     // sum, n
  std::map<std::string, std::pair<double, int>> mastered;    // sum, n

  for (const auto* log : logs) {
    for (const auto& step : log->steps) {
      ++counts[static_cast<std::size_t>(step.action)];
      ++total_steps;
      demand_sum += step.demand;
    }
    cum_reward += log->summary.cum_reward;
    cum_eng += log->summary.cum_r_eng;
    cum_mas += log->summary.cum_r_mas;
    auto& dk = delta_k[log->header.profile];
    dk.first += log->summary.delta_k;
    dk.second += 1;
    auto& nm = mastered[log->header.profile];
    nm.first += log->summary.n_mastered;
    nm.second += 1;
  }

  for (int a = 0; a < kNumActions; ++a) {
    s.action_share_pct[static_cast<std::size_t>(a)] =
        100.0 * static_cast<double>(counts[static_cast<std::size_t>(a)]) /
        static_cast<double>(total_steps);
  }
  s.mean_demand = demand_sum / static_cast<double>(total_steps);
  for (const auto& [profile, acc] : delta_k) {
    s.delta_k_by_profile[profile] = acc.first / acc.second;
  }
  for (const auto& [profile, acc] : mastered) {
    s.mastered_by_profile[profile] = acc.first / acc.second;
  }
  s.engagement_mastery_ratio =
      cum_mas > 0.0 ? cum_eng / cum_mas : std::numeric_limits<double>::infinity();
  s.mean_cum_reward = cum_reward / static_cast<double>(logs.size());
  return s;
}

ConditionSummary summarize_condition(std::span<const SessionLog> logs) {
  std::vector<const SessionLog*> ptrs;
  ptrs.reserve(logs.size());
  for (const auto& log : logs) ptrs.push_back(&log);
  return summarize_condition(std::span<const SessionLog* const>(ptrs));
}

std::vector<ConditionEvaluation> evaluate_conditions(const LogSet& logs, const ConceptGraph& graph,
                                                     const ConstraintParams& params,
                                                     const DemandMap& demands) {
  std::vector<ConditionEvaluation> rows;
  const auto names = logs.condition_names();
  if (names.empty()) throw std::invalid_argument("evaluate_conditions: empty log set");

  // first pass: per-session rates and the empirical reward maximum
  double v_star = 0.0;
  struct PerCondition {
    std::vector<ViolationVector> rates;
    std::vector<double> rewards;
  };
  std::map<std::string, PerCondition> acc;
  for (const auto& name : names) {
    auto sessions = logs.by_condition(name);
    auto& pc = acc[name];
    for (const auto* log : sessions) {
      pc.rates.push_back(evaluate_session(*log, graph, params, demands));
      pc.rewards.push_back(log->summary.cum_reward);
    }
    double mean_reward = 0.0;
    for (double r : pc.rewards) mean_reward += r;
    mean_reward /= static_cast<double>(pc.rewards.size());
    v_star = std::max(v_star, mean_reward);
  }
  if (!(v_star > 0.0)) {
    throw std::runtime_error("evaluate_conditions: no condition earned positive reward");
  }

  for (const auto& name : names) {
    const auto& pc = acc[name];
    ConditionEvaluation row;
    row.condition = name;
    const auto n = pc.rates.size();
    double mean_reward = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      row.rates.v2 += pc.rates[i].v2;
      row.rates.v3 += pc.rates[i].v3;
      row.rates.v4 += pc.rates[i].v4;
      mean_reward += pc.rewards[i];
      const double session_norm = violation_norm(pc.rates[i], params);
      row.per_seed_rhsi.push_back(rhsi(pc.rewards[i], v_star, session_norm).rhsi);
    }
    row.rates.v2 /= static_cast<double>(n);
    row.rates.v3 /= static_cast<double>(n);
    row.rates.v4 /= static_cast<double>(n);
    mean_reward /= static_cast<double>(n);
    row.norm = violation_norm(row.rates, params);
    row.v_pi = mean_reward;
    const auto report = rhsi(mean_reward, v_star, row.norm);
    row.ratio = report.ratio;
    row.rhsi = report.rhsi;
    for (double r : row.per_seed_rhsi) row.rhsi_per_seed_mean += r;
    row.rhsi_per_seed_mean /= static_cast<double>(row.per_seed_rhsi.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pedsafe
