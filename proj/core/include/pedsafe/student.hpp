#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "pedsafe/actions.hpp"
#include "pedsafe/concept_graph.hpp"
#include "pedsafe/rng.hpp"

namespace pedsafe {

struct LearnerProfile {
  std::string name;
  double initial_knowledge = 0.15;     // uniform initial mastery level
  double gain_multiplier = 1.0;        // scales base mastery gains
  double confusion_threshold = 0.5;    // above this, mastery updates are suppressed
  double engagement_sensitivity = 1.0; // scales engagement deltas on the student side
};

// The three bundled archetypes.
const std::array<LearnerProfile, 3>& default_profiles();
const LearnerProfile& profile_by_name(std::string_view name);  // throws on unknown

// Simulator constants. Exposed so alternative student dynamics can be
// configured without code changes; defaults are the calibrated model.
struct SimConfig {
  double init_noise_half_width = 0.05;  // uniform noise around initial_knowledge
  double confusion_suppression = 0.3;   // gain multiplier while confused
  double confusion_spike = 0.15;        // hard action on an unprepared target
  double confusion_relief = 0.10;       // Explain_Simple / Provide_Hint
  double confusion_decay = 0.05;        // every other action
  double unprepared_mastery = 0.3;      // below this, hard actions confuse
  // Per-action base mastery gains; defaults come from the action table.
  std::array<double, kNumActions> mastery_gains;

  SimConfig();
};

struct StudentState {
  MasteryVector mastery;
  double engagement = 0.5;
  double confusion = 0.0;
  LearnerProfile profile;
  Rng rng{0};

  bool operator==(const StudentState& other) const {
    return mastery == other.mastery && engagement == other.engagement &&
           confusion == other.confusion && rng == other.rng;
  }
};

// Fresh student: every concept at the profile's initial knowledge perturbed
// by seeded uniform noise (clamped to [0,1]); engagement 0.5, confusion 0.
StudentState init_student(const LearnerProfile& profile, const ConceptGraph& graph,
                          std::uint64_t seed, const SimConfig& cfg = SimConfig());

struct StepOutcome {
  double mastery_delta = 0.0;     // effective change applied to the target concept
  double engagement_delta = 0.0;  // sensitivity-scaled delta before clamping
  double confusion_delta = 0.0;   // effective change after clamping
};

// Applies one tutoring action to the target concept and updates the
// engagement/confusion dynamics. Throws on an unknown concept index.
StepOutcome apply_action(StudentState& state, Action action, int concept_idx,
                         const ConceptGraph& graph, const SimConfig& cfg);

int count_mastered(const StudentState& state, double theta_mastered);

}  // namespace pedsafe
