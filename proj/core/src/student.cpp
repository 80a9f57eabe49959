#include "pedsafe/student.hpp"

#include <algorithm>
#include <stdexcept>

namespace pedsafe {

const std::array<LearnerProfile, 3>& default_profiles() {
  // initial knowledge / gain multiplier / confusion threshold per archetype;
  // struggling learners react more strongly to engagement swings.
  static const std::array<LearnerProfile, 3> profiles = {{
      {"Struggling", 0.05, 0.8, 0.30, 1.2},
      {"Average", 0.15, 1.0, 0.50, 1.0},
      {"Advanced", 0.30, 1.2, 0.70, 0.8},
  }};
  return profiles;
}

const LearnerProfile& profile_by_name(std::string_view name) {
  for (const auto& p : default_profiles()) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown learner profile: " + std::string(name));
}

SimConfig::SimConfig() {
  for (const auto& info : action_table()) {
    mastery_gains[static_cast<std::size_t>(info.action)] = info.base_mastery_gain;
  }
}

StudentState init_student(const LearnerProfile& profile, const ConceptGraph& graph,
                          std::uint64_t seed, const SimConfig& cfg) {
  StudentState state;
  state.profile = profile;
  state.rng = Rng(seed);
  state.engagement = 0.5;
  state.confusion = 0.0;
  state.mastery.resize(static_cast<std::size_t>(graph.size()));
  for (auto& k : state.mastery) {
    const double noise = state.rng.next_range(-cfg.init_noise_half_width, cfg.init_noise_half_width);
    k = std::clamp(profile.initial_knowledge + noise, 0.0, 1.0);
  }
  return state;
}

StepOutcome apply_action(StudentState& state, Action action, int concept_idx,
                         const ConceptGraph& graph, const SimConfig& cfg) {
  if (concept_idx < 0 || concept_idx >= graph.size()) {
    throw std::out_of_range("apply_action: concept index " + std::to_string(concept_idx) +
                            " outside graph of size " + std::to_string(graph.size()));
  }
  StepOutcome out;
  auto& k = state.mastery[static_cast<std::size_t>(concept_idx)];
  const double mastery_before = k;

  // mastery update, suppressed while the student is confused
  double gain = cfg.mastery_gains[static_cast<std::size_t>(action)] * state.profile.gain_multiplier;
  if (state.confusion > state.profile.confusion_threshold) {
    gain *= cfg.confusion_suppression;
  }
  const double updated = std::min(1.0, k + gain);
  out.mastery_delta = updated - k;
  k = updated;

  // engagement update: pedagogy delta scaled by the profile's sensitivity
  const double raw_delta = engagement_delta(action, mastery_before);
  out.engagement_delta = raw_delta * state.profile.engagement_sensitivity;
  state.engagement = std::clamp(state.engagement + out.engagement_delta, 0.0, 1.0);

  // confusion dynamics: hard actions on unprepared targets spike confusion,
  // scaffolding actions relieve it, everything else decays it
  double confusion_change = -cfg.confusion_decay;
  if ((action == Action::Challenge || action == Action::AssignExercise) &&
      mastery_before < cfg.unprepared_mastery) {
    confusion_change = cfg.confusion_spike;
  } else if (action == Action::ExplainSimple || action == Action::ProvideHint) {
    confusion_change = -cfg.confusion_relief;
  }
  const double confusion_after = std::clamp(state.confusion + confusion_change, 0.0, 1.0);
  out.confusion_delta = confusion_after - state.confusion;
  state.confusion = confusion_after;

  return out;
}

int count_mastered(const StudentState& state, double theta_mastered) {
  return static_cast<int>(std::count_if(state.mastery.begin(), state.mastery.end(),
                                        [&](double k) { return k >= theta_mastered; }));
}

}  // namespace pedsafe
