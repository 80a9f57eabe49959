#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pedsafe/bandit.hpp"
#include "pedsafe/experiment.hpp"
#include "pedsafe/params.hpp"
#include "pedsafe/student.hpp"

namespace pedsafe {

// Everything a run needs, loadable from one JSON document. Absent fields
// keep their defaults, which are the calibrated operating point.
struct RunConfig {
  ExperimentMatrix matrix = ExperimentMatrix::defaults();
  ConstraintParams params;
  SimConfig sim;
  AgentConfig agent;
  std::vector<LearnerProfile> profile_set;  // bundled archetypes by default
  std::string curriculum_path = "curriculum/python27.json";

  RunConfig();
  const LearnerProfile& profile(std::string_view name) const;
};

RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& json_text);

// Full parameter snapshot (matrix, params, sim, agent, profiles, action
// table) as JSON text, embedded in run manifests.
std::string run_config_to_json(const RunConfig& cfg);

// PEDSAFE_SEED_OFFSET shifts every seed for robustness re-runs; 0 if unset.
std::uint64_t seed_offset_from_env();

}  // namespace pedsafe
