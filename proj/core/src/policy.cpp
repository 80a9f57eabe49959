#include "pedsafe/policy.hpp"

#include <algorithm>

namespace pedsafe {

namespace {
constexpr double kBoundaryEps = 1e-12;  // window means exactly at the floor pass
}

int frontier_concept(const ConceptGraph& graph, const MasteryVector& mastery,
                     std::span<const std::uint8_t> access, bool restrict_accessible,
                     double theta_mastered) {
  int best = -1;
  for (int i = 0; i < graph.size(); ++i) {
    if (mastery[static_cast<std::size_t>(i)] >= theta_mastered) continue;
    if (restrict_accessible && !access[static_cast<std::size_t>(i)]) continue;
    if (best < 0 || graph.node(i).depth < graph.node(best).depth) best = i;
    // equal depth: keep the earlier id (indices are in id order)
  }
  if (best < 0) best = graph.size() - 1;  // curriculum complete
  return best;
}

CandidateSet candidate_pairs(const StudentState& state, const ConceptGraph& graph,
                             const ConstraintToggles& toggles,
                             std::span<const double> recent_demands, double theta_min,
                             double theta_mastered, const DemandMap& demands) {
  CandidateSet out;

  const auto access = accessible_set(graph, state.mastery, theta_min);
  out.concept_idx =
      frontier_concept(graph, state.mastery, access, toggles.c1_enabled, theta_mastered);

  if (!toggles.c3_enabled) {
    out.actions.assign(kAllActions.begin(), kAllActions.end());
    return out;
  }

  // demand-floor projection over the trailing window
  double recent_sum = 0.0;
  for (double d : recent_demands) recent_sum += d;
  const double count = static_cast<double>(recent_demands.size()) + 1.0;
  for (Action a : kAllActions) {
    const double projected = (recent_sum + demands(a)) / count;
    if (projected >= toggles.delta_min - kBoundaryEps) out.actions.push_back(a);
  }
  if (out.actions.empty()) {
    // feasibility fallback: recover as fast as possible
    double max_d = 0.0;
    for (Action a : kAllActions) max_d = std::max(max_d, demands(a));
    for (Action a : kAllActions) {
      if (demands(a) == max_d) out.actions.push_back(a);
    }
  }
  return out;
}

Action warm_or_select(const BanditModel& model, std::span<const double> features,
                      std::span<const Action> candidates, int t) {
  if (t < model.config().warm_start_steps) {
    for (Action a : candidates) {
      if (model.arm(a).pulls() == 0) return a;
    }
  }
  return model.select(features, candidates);
}

}  // namespace pedsafe
