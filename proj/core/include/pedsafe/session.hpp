#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pedsafe/actions.hpp"
#include "pedsafe/bandit.hpp"
#include "pedsafe/concept_graph.hpp"
#include "pedsafe/params.hpp"
#include "pedsafe/reward.hpp"
#include "pedsafe/student.hpp"

namespace pedsafe {

enum class Condition { EO, MAS, MO, ST, NoC1, NoC3 };

inline constexpr std::array<Condition, 6> kAllConditions = {
    Condition::EO, Condition::MAS, Condition::MO, Condition::ST, Condition::NoC1, Condition::NoC3,
};

const char* condition_name(Condition c);
Condition condition_from_name(std::string_view name);

struct ConditionConfig {
  Condition name = Condition::ST;
  RewardWeights weights;
  ConstraintToggles toggles;
};

// Reward weights and constraint toggles per condition. EO/MAS/MO run
// unconstrained; ST enables both online constraints; the two ablations
// each drop one of them.
ConditionConfig condition_config(Condition c, const ConstraintParams& params);

struct StepRecord {
  int t = 0;
  int concept_idx = -1;
  Action action = Action::Encourage;
  double demand = 0.0;
  double mastery_delta = 0.0;
  double engagement_delta = 0.0;
  double confusion = 0.0;  // after the step
  double r_eng = 0.0;
  double r_mas = 0.0;
  double r_ped = 0.0;
  double reward = 0.0;
  bool accessible = false;   // target was in the accessible set at selection
  bool appropriate = false;  // r_ped == +0.5
};

struct SessionHeader {
  std::string condition;
  std::string profile;
  std::uint64_t seed = 0;
  int session_length = 0;
  ConstraintParams params;
  MasteryVector initial_mastery;
  std::string version;
};

struct SessionSummary {
  double delta_k = 0.0;    // mean mastery change across all concepts
  int n_mastered = 0;      // concepts at or above theta_mastered at session end
  double cum_reward = 0.0;
  double cum_r_eng = 0.0;
  double cum_r_mas = 0.0;
};

struct SessionLog {
  SessionHeader header;
  std::vector<StepRecord> steps;
  SessionSummary summary;
};

// Recomputes the summary from the header and step records.
SessionSummary summarize_session(const SessionLog& log, const ConceptGraph& graph,
                                 double theta_mastered);

// Runs one tutoring session: featurize -> candidate filter -> UCB select ->
// student update -> reward -> bandit update, logging every intermediate.
// Deterministic in (condition, profile, seed).
SessionLog run_session(const ConditionConfig& condition, const LearnerProfile& profile,
                       std::uint64_t seed, const ConceptGraph& graph,
                       const ConstraintParams& params, const SimConfig& sim,
                       const AgentConfig& agent, int session_length);

}  // namespace pedsafe
