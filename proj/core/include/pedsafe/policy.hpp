#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pedsafe/actions.hpp"
#include "pedsafe/bandit.hpp"
#include "pedsafe/concept_graph.hpp"
#include "pedsafe/params.hpp"
#include "pedsafe/student.hpp"

namespace pedsafe {

struct CandidateSet {
  std::vector<Action> actions;  // enum order
  int concept_idx = -1;         // frontier target
};

// Target concept: the minimum-depth unmastered concept (restricted to the
// accessible set when prerequisite masking is on), ties broken by id order.
// Falls back to the last concept when everything is mastered.
int frontier_concept(const ConceptGraph& graph, const MasteryVector& mastery,
                     std::span<const std::uint8_t> access, bool restrict_accessible,
                     double theta_mastered);

// Candidate actions and target concept for one step.
//
// With the demand filter on, an action survives iff appending its demand to
// the recent history keeps the projected window mean at or above the floor.
// When no action can reach the floor the feasibility fallback keeps the
// maximal-demand actions, so the result is never empty.
CandidateSet candidate_pairs(const StudentState& state, const ConceptGraph& graph,
                             const ConstraintToggles& toggles,
                             std::span<const double> recent_demands, double theta_min,
                             double theta_mastered, const DemandMap& demands = DemandMap());

// Warm-start selection: the lowest-enum candidate arm that has never been
// pulled, or UCB when every candidate already has data.
Action warm_or_select(const BanditModel& model, std::span<const double> features,
                      std::span<const Action> candidates, int t);

}  // namespace pedsafe
