#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "pedsafe/actions.hpp"

namespace pedsafe {

// Ridge-regression sufficient statistics for one arm. The inverse design
// matrix is maintained incrementally (Sherman-Morrison), so scoring and
// updating are both O(d^2).
class RidgeArm {
 public:
  RidgeArm(int dim, double lambda);

  void update(std::span<const double> x, double reward, double weight = 1.0);

  // theta' x with theta = A^-1 b
  double point_estimate(std::span<const double> x) const;
  // sqrt(x' A^-1 x)
  double uncertainty_width(std::span<const double> x) const;
  // point estimate + alpha * width, with the shared matvec done once
  double ucb_score(std::span<const double> x, double alpha) const;

  int pulls() const { return pulls_; }
  int dim() const { return dim_; }
  const std::vector<double>& a_inv() const { return a_inv_; }
  const std::vector<double>& b() const { return b_; }

  // reinstates statistics from a checkpoint
  void restore(std::vector<double> a_inv, std::vector<double> b, int pulls);

 private:
  std::vector<double> solve(std::span<const double> x) const;  // A^-1 x

  int dim_;
  std::vector<double> a_inv_;  // row-major dim x dim, symmetric
  std::vector<double> b_;
  int pulls_ = 0;
};

struct AgentConfig {
  double alpha = 1.0;      // exploration coefficient
  double lambda = 1.0;     // ridge regularization
  int warm_start_steps = 8;  // round-robin every arm once before UCB takes over
};

// One ridge arm per action; UCB selection over a candidate subset.
class BanditModel {
 public:
  explicit BanditModel(const AgentConfig& cfg = AgentConfig(), int dim = 124);

  // argmax of the UCB score over the candidates; exact ties resolve to the
  // lowest enum value. Throws on an empty candidate set.
  Action select(std::span<const double> x, std::span<const Action> candidates) const;

  // Incorporates (x, reward) into the chosen arm only. Throws on a
  // non-finite reward.
  void update(std::span<const double> x, Action action, double reward, double weight = 1.0);

  const RidgeArm& arm(Action a) const { return arms_[static_cast<std::size_t>(a)]; }
  const AgentConfig& config() const { return cfg_; }

  // checkpoint/resume; format is versioned JSON text
  std::string serialize() const;
  static BanditModel deserialize(const std::string& text);

 private:
  AgentConfig cfg_;
  int dim_;
  std::vector<RidgeArm> arms_;
};

}  // namespace pedsafe
