#pragma once

#include "pedsafe/actions.hpp"
#include "pedsafe/concept_graph.hpp"
#include "pedsafe/student.hpp"

namespace pedsafe {

// Fixed linear scales applied to the raw per-step deltas before weighting.
inline constexpr double kEngagementScale = 3.0;
inline constexpr double kMasteryScale = 100.0;

// The appropriateness component is two-valued by design.
inline constexpr double kAppropriate = +0.5;
inline constexpr double kInappropriate = -1.0;

struct RewardWeights {
  double w_eng = 0.0;
  double w_mas = 0.0;
  double w_ped = 0.0;
};

struct RewardComponents {
  double r_eng = 0.0;  // kEngagementScale * engagement delta
  double r_mas = 0.0;  // kMasteryScale * mastery delta
  double r_ped = 0.0;  // +0.5 or -1.0
};

struct ComposedReward {
  double reward = 0.0;
  RewardComponents components;
};

// An action is appropriate iff the concept is accessible and the action's
// demand sits within the linear band demand <= 0.5 + mastery(target): harder
// actions require better-prepared students. Returns +0.5 or -1.0.
double appropriateness(Action action, int concept_idx, const StudentState& state,
                       const ConceptGraph& graph, double theta_min,
                       const DemandMap& demands = DemandMap());

ComposedReward compose_reward(const RewardWeights& weights, double eng_delta,
                              double mastery_delta, double approp);

}  // namespace pedsafe
