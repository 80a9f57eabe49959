#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace pedsafe {

// The eight tutoring actions. Enum order is the canonical order used for
// feature blocks, tie-breaking and serialization.
enum class Action : int {
  Encourage = 0,
  ExplainSimple,
  ProvideHint,
  ExplainDetailed,
  ProvideExample,
  AssessKnowledge,
  AssignExercise,
  Challenge,
};

inline constexpr int kNumActions = 8;

inline constexpr std::array<Action, kNumActions> kAllActions = {
    Action::Encourage,      Action::ExplainSimple,  Action::ProvideHint,
    Action::ExplainDetailed, Action::ProvideExample, Action::AssessKnowledge,
    Action::AssignExercise, Action::Challenge,
};

struct ActionInfo {
  Action action;
  const char* name;
  double demand;                 // cognitive demand, ordinal scale in [0, 1]
  double base_engagement_delta;  // unmodulated engagement delta
  double base_mastery_gain;      // unmodulated per-step mastery gain
};

// Calibrated action table. Demand anchors: Encourage 0.0, Challenge 1.0.
const std::array<ActionInfo, kNumActions>& action_table();

const ActionInfo& action_info(Action a);
const char* action_name(Action a);
Action action_from_name(std::string_view name);  // throws on unknown name

// Demand lookup. Perturbed variants scale every non-anchor value by a
// constant (clamped to [0,1]); the anchors Encourage and Challenge are
// held fixed so the scale endpoints stay meaningful.
class DemandMap {
 public:
  DemandMap();  // calibrated baseline
  static DemandMap scaled(double scale);

  double operator()(Action a) const { return demand_[static_cast<std::size_t>(a)]; }
  double scale() const { return scale_; }

 private:
  std::array<double, kNumActions> demand_{};
  double scale_ = 1.0;
};

// Engagement delta of an action, modulated by the target concept's mastery
// (hard actions frustrate unprepared students, reward prepared ones).
// Result clamped to [-1.0, +0.8].
double engagement_delta(Action a, double target_mastery);

}  // namespace pedsafe
