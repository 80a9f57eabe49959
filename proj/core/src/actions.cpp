#include "pedsafe/actions.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pedsafe {

const std::array<ActionInfo, kNumActions>& action_table() {
  // demand / engagement delta / mastery gain per action
  static const std::array<ActionInfo, kNumActions> table = {{
      {Action::Encourage, "Encourage", 0.0, +0.8, 0.000},
      {Action::ExplainSimple, "Explain_Simple", 0.2, +0.3, 0.008},
      {Action::ProvideHint, "Provide_Hint", 0.3, +0.4, 0.009},
      {Action::ExplainDetailed, "Explain_Detailed", 0.4, +0.1, 0.012},
      {Action::ProvideExample, "Provide_Example", 0.5, +0.3, 0.011},
      {Action::AssessKnowledge, "Assess_Knowledge", 0.5, -0.1, 0.007},
      {Action::AssignExercise, "Assign_Exercise", 0.8, -0.2, 0.014},
      {Action::Challenge, "Challenge", 1.0, -0.4, 0.015},
  }};
  return table;
}

const ActionInfo& action_info(Action a) {
  return action_table()[static_cast<std::size_t>(a)];
}

const char* action_name(Action a) { return action_info(a).name; }

Action action_from_name(std::string_view name) {
  for (const auto& info : action_table()) {
    if (name == info.name) return info.action;
  }
  throw std::invalid_argument("unknown action name: " + std::string(name));
}

DemandMap::DemandMap() {
  for (const auto& info : action_table()) {
    demand_[static_cast<std::size_t>(info.action)] = info.demand;
  }
}

DemandMap DemandMap::scaled(double scale) {
  DemandMap map;
  map.scale_ = scale;
  for (const auto& info : action_table()) {
    if (info.action == Action::Encourage || info.action == Action::Challenge) {
      continue;  // anchors held fixed
    }
    double d = std::clamp(info.demand * scale, 0.0, 1.0);
    map.demand_[static_cast<std::size_t>(info.action)] = d;
  }
  return map;
}

double engagement_delta(Action a, double target_mastery) {
  double delta = action_info(a).base_engagement_delta;
  switch (a) {
    case Action::AssignExercise:
      // exercises engage students who are ready for them
      if (target_mastery >= 0.5) delta = +0.2;
      break;
    case Action::Challenge:
      if (target_mastery < 0.3) {
        delta = -0.4;  // frustration
      } else if (target_mastery >= 0.5) {
        delta = +0.3;
      } else {
        delta = -0.1;
      }
      break;
    default:
      break;
  }
  return std::clamp(delta, -1.0, 0.8);
}

}  // namespace pedsafe
