#include "pedsafe/features.hpp"

#include <algorithm>

namespace pedsafe {

FeatureVector featurize(const StudentState& state, const ConceptGraph& graph,
                        const SessionContext& ctx, double theta_min, double theta_mastered) {
  FeatureVector x;
  x.reserve(kFeatureDim);

  const auto access = accessible_set(graph, state.mastery, theta_min);
  const int n = graph.size();

  for (int i = 0; i < n; ++i) x.push_back(state.mastery[static_cast<std::size_t>(i)]);
  for (int i = 0; i < n; ++i) x.push_back(access[static_cast<std::size_t>(i)] ? 1.0 : 0.0);
  for (int i = 0; i < n; ++i) {
    x.push_back(state.mastery[static_cast<std::size_t>(i)] >= theta_mastered ? 1.0 : 0.0);
  }
  for (int i = 0; i < n; ++i) {
    x.push_back(static_cast<double>(ctx.attempt_counts[static_cast<std::size_t>(i)]) /
                static_cast<double>(std::max(1, ctx.session_length)));
  }

  // frequency shares over the recent-action window
  std::array<double, kNumActions> freq{};
  if (!ctx.recent_actions.empty()) {
    for (Action a : ctx.recent_actions) freq[static_cast<std::size_t>(a)] += 1.0;
    for (auto& f : freq) f /= static_cast<double>(ctx.recent_actions.size());
  }
  x.insert(x.end(), freq.begin(), freq.end());

  std::array<double, kNumActions> one_hot{};
  if (ctx.last_action) one_hot[static_cast<std::size_t>(*ctx.last_action)] = 1.0;
  x.insert(x.end(), one_hot.begin(), one_hot.end());

  return x;
}

}  // namespace pedsafe
