#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pedsafe/safety.hpp"
#include "pedsafe/session.hpp"

namespace pedsafe {

struct ExperimentMatrix {
  std::vector<Condition> conditions;
  std::vector<std::string> profiles;
  std::vector<std::uint64_t> seeds;
  int session_length = 150;

  // 6 conditions x 3 profiles x 10 seeds x 150 steps
  static ExperimentMatrix defaults();
  std::size_t session_count() const {
    return conditions.size() * profiles.size() * seeds.size();
  }
};

struct LogSet {
  std::vector<SessionLog> logs;  // matrix order: condition-major, then profile, then seed

  std::vector<const SessionLog*> by_condition(std::string_view condition) const;
  std::vector<std::string> condition_names() const;  // in first-seen order
};

// Runs every cell of the matrix. Sessions are independent; `parallelism`
// bounds the worker threads and has no effect on the result.
LogSet run_matrix(const ExperimentMatrix& matrix, const ConceptGraph& graph,
                  const ConstraintParams& params, const SimConfig& sim, const AgentConfig& agent,
                  int parallelism = 1);

struct ConditionSummary {
  std::string condition;
  int sessions = 0;
  std::array<double, kNumActions> action_share_pct{};  // sums to ~100
  double mean_demand = 0.0;
  std::map<std::string, double> delta_k_by_profile;
  std::map<std::string, double> mastered_by_profile;
  double engagement_mastery_ratio = 0.0;  // +inf sentinel when mastery reward is <= 0
  double mean_cum_reward = 0.0;
};

ConditionSummary summarize_condition(std::span<const SessionLog* const> logs);
ConditionSummary summarize_condition(std::span<const SessionLog> logs);

// Condition-level evaluation row (violation rates, norm, reward ratio, RHSI).
struct ConditionEvaluation {
  std::string condition;
  ViolationVector rates;      // means over the condition's sessions
  double norm = 0.0;
  double v_pi = 0.0;          // mean cumulative reward
  double ratio = 0.0;
  double rhsi = 0.0;          // condition-level aggregate
  double rhsi_per_seed_mean = 0.0;
  std::vector<double> per_seed_rhsi;
};

// Evaluates every condition present in the batch. The reference maximum is
// the highest condition-level mean cumulative reward in the batch.
std::vector<ConditionEvaluation> evaluate_conditions(const LogSet& logs, const ConceptGraph& graph,
                                                     const ConstraintParams& params,
                                                     const DemandMap& demands = DemandMap());

}  // namespace pedsafe
