#include "pedsafe/reward.hpp"

#include <stdexcept>

namespace pedsafe {

double appropriateness(Action action, int concept_idx, const StudentState& state,
                       const ConceptGraph& graph, double theta_min, const DemandMap& demands) {
  if (concept_idx < 0 || concept_idx >= graph.size()) {
    throw std::out_of_range("appropriateness: unknown concept index " +
                            std::to_string(concept_idx));
  }
  for (int p : graph.prereqs(concept_idx)) {
    if (state.mastery[static_cast<std::size_t>(p)] < theta_min) {
      return kInappropriate;  // inaccessible concept, regardless of action
    }
  }
  const double mastery = state.mastery[static_cast<std::size_t>(concept_idx)];
  return demands(action) <= 0.5 + mastery ? kAppropriate : kInappropriate;
}

ComposedReward compose_reward(const RewardWeights& weights, double eng_delta,
                              double mastery_delta, double approp) {
  ComposedReward out;
  out.components.r_eng = kEngagementScale * eng_delta;
  out.components.r_mas = kMasteryScale * mastery_delta;
  out.components.r_ped = approp;
  out.reward = weights.w_eng * out.components.r_eng + weights.w_mas * out.components.r_mas +
               weights.w_ped * out.components.r_ped;
  return out;
}

}  // namespace pedsafe
