#pragma once

#include <map>
#include <string>
#include <vector>

#include "pedsafe/experiment.hpp"

namespace pedsafe {

// The four main conditions enter the sensitivity analyses; ablations are
// excluded, matching the primary comparison set.
std::vector<std::string> main_condition_names(const LogSet& logs);

struct SensitivityCell {
  int w = 0;
  double delta_min = 0.0;
  double eps_prog = 0.0;  // recalibrated at this window size
  std::map<std::string, double> mean_rhsi;  // per condition, per-seed mean
  std::string best;    // lowest RHSI
  std::string second;
};

inline const std::vector<int> kDefaultGridW = {5, 10, 15, 20};
inline const std::vector<double> kDefaultGridDelta = {0.30, 0.35, 0.40, 0.45, 0.50};

// Re-scores every logged session under each (W, delta_min) cell, holding the
// reward series fixed. eps_prog is recalibrated from the mastery-only logs
// at each W. Throws when the log set has no MAS sessions.
std::vector<SensitivityCell> sensitivity_grid(const LogSet& logs, const ConceptGraph& graph,
                                              const ConstraintParams& base,
                                              const std::vector<int>& w_values = kDefaultGridW,
                                              const std::vector<double>& delta_values = kDefaultGridDelta,
                                              const std::string& mas_condition = "MAS");

struct PerturbationRow {
  double scale = 1.0;
  std::string condition;
  double mean_rhsi = 0.0;  // per-seed mean under the perturbed demand map
  double c3_rate = 0.0;    // mean C3 violation rate
};

// Re-scores all sessions under a demand map with non-anchor values scaled
// by `scale` (anchors fixed). Stored logs are never mutated.
std::vector<PerturbationRow> perturb_and_rescore(const LogSet& logs, double scale,
                                                 const ConceptGraph& graph,
                                                 const ConstraintParams& params);

}  // namespace pedsafe
