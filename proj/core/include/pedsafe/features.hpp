#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "pedsafe/actions.hpp"
#include "pedsafe/concept_graph.hpp"
#include "pedsafe/student.hpp"

namespace pedsafe {

// State representation: 27 mastery values, 27 accessibility flags,
// 27 mastered flags, 27 normalized attempt counts, 8 recent-action
// frequency shares, 8 one-hot of the last action.
inline constexpr int kFeatureDim = 124;

using FeatureVector = std::vector<double>;

// Rolling per-session bookkeeping the featurizer and the demand filter need.
struct SessionContext {
  explicit SessionContext(int concept_count, int window, int session_length)
      : attempt_counts(static_cast<std::size_t>(concept_count), 0),
        window(window),
        session_length(session_length) {}

  void record(Action action, int concept_idx, double demand) {
    ++attempt_counts[static_cast<std::size_t>(concept_idx)];
    last_action = action;
    recent_actions.push_back(action);
    if (static_cast<int>(recent_actions.size()) > window) recent_actions.pop_front();
    demand_history.push_back(demand);
  }

  // demands of the last `count` selected actions, oldest first
  std::vector<double> recent_demands(int count) const {
    const int n = static_cast<int>(demand_history.size());
    const int take = std::min(count, n);
    return {demand_history.end() - take, demand_history.end()};
  }

  std::vector<int> attempt_counts;
  std::deque<Action> recent_actions;  // capped at `window`
  std::vector<double> demand_history;
  std::optional<Action> last_action;
  int window;
  int session_length;
};

FeatureVector featurize(const StudentState& state, const ConceptGraph& graph,
                        const SessionContext& ctx, double theta_min, double theta_mastered);

}  // namespace pedsafe
