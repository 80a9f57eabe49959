#pragma once

#include <string>
#include <vector>

#include "pedsafe/experiment.hpp"
#include "pedsafe/sensitivity.hpp"
#include "pedsafe/stats.hpp"

namespace pedsafe {

// One pairwise comparison row of the statistical report.
struct ComparisonRow {
  std::string family;      // correction family
  int family_size = 1;
  std::string metric;
  std::string comparison;  // "A_vs_B"
  std::string profile;     // "pooled" for per-seed RHSI
  bool degenerate = false; // both samples zero variance -> '---'
  StatResult result;
};

// Pairwise Welch comparisons: per-seed RHSI (pooled across profiles) for the
// main conditions and the ablations, plus per-profile behavioral metrics
// (mastery gain, appropriateness rate, inappropriate action count).
std::vector<ComparisonRow> build_comparisons(const LogSet& logs, const ConceptGraph& graph,
                                             const ConstraintParams& params);

// CSV emitters. Every table has a header row and a stable column order.
std::string violations_csv(const std::vector<ConditionEvaluation>& rows);
std::string rhsi_csv(const std::vector<ConditionEvaluation>& rows);
std::string condition_summary_csv(const ConditionSummary& summary);
std::string stats_csv(const std::vector<ComparisonRow>& rows);
std::string sensitivity_csv(const std::vector<SensitivityCell>& cells,
                            const ConstraintParams& base);
std::string perturbation_csv(const std::vector<PerturbationRow>& rows);

// Static self-contained figures (no scripting), deterministic output.
std::string sensitivity_heatmap_svg(const std::vector<SensitivityCell>& cells);
std::string rhsi_boxplot_svg(const LogSet& logs, const ConceptGraph& graph,
                             const ConstraintParams& params, double eps_threshold = 0.25);

// stable float formatting shared by all emitters
std::string format_number(double value);

}  // namespace pedsafe
