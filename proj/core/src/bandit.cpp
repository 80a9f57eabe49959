#include "pedsafe/bandit.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pedsafe {

using nlohmann::json;

RidgeArm::RidgeArm(int dim, double lambda)
    : dim_(dim), a_inv_(static_cast<std::size_t>(dim) * dim, 0.0), b_(dim, 0.0) {
  if (lambda <= 0.0) throw std::invalid_argument("ridge lambda must be positive");
  for (int i = 0; i < dim; ++i) {
    a_inv_[static_cast<std::size_t>(i) * dim + i] = 1.0 / lambda;
  }
}

std::vector<double> RidgeArm::solve(std::span<const double> x) const {
  std::vector<double> t(static_cast<std::size_t>(dim_), 0.0);
  for (int i = 0; i < dim_; ++i) {
    const double* row = &a_inv_[static_cast<std::size_t>(i) * dim_];
    double acc = 0.0;
    for (int j = 0; j < dim_; ++j) acc += row[j] * x[static_cast<std::size_t>(j)];
    t[static_cast<std::size_t>(i)] = acc;
  }
  return t;
}

void RidgeArm::update(std::span<const double> x, double reward, double weight) {
  if (!std::isfinite(reward)) throw std::invalid_argument("bandit update: non-finite reward");
  if (static_cast<int>(x.size()) != dim_) {
    throw std::invalid_argument("bandit update: feature dimension mismatch");
  }
  // Sherman-Morrison: (A + w x x')^-1 = A^-1 - w (A^-1 x)(A^-1 x)' / (1 + w x'A^-1 x)
  const auto t = solve(x);
  double xtx = 0.0;
  for (int i = 0; i < dim_; ++i) xtx += x[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)];
  const double denom = 1.0 + weight * xtx;
  for (int i = 0; i < dim_; ++i) {
    const double ti = weight * t[static_cast<std::size_t>(i)] / denom;
    double* row = &a_inv_[static_cast<std::size_t>(i) * dim_];
    for (int j = 0; j < dim_; ++j) row[j] -= ti * t[static_cast<std::size_t>(j)];
  }
  for (int i = 0; i < dim_; ++i) {
    b_[static_cast<std::size_t>(i)] += weight * reward * x[static_cast<std::size_t>(i)];
  }
  ++pulls_;
}

double RidgeArm::point_estimate(std::span<const double> x) const {
  const auto t = solve(x);
  double acc = 0.0;  // theta'x = b'A^-1 x, A^-1 symmetric
  for (int i = 0; i < dim_; ++i) acc += b_[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)];
  return acc;
}

double RidgeArm::uncertainty_width(std::span<const double> x) const {
  const auto t = solve(x);
  double q = 0.0;
  for (int i = 0; i < dim_; ++i) q += x[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)];
  return std::sqrt(std::max(0.0, q));
}

void RidgeArm::restore(std::vector<double> a_inv, std::vector<double> b, int pulls) {
  if (a_inv.size() != static_cast<std::size_t>(dim_) * dim_ ||
      b.size() != static_cast<std::size_t>(dim_)) {
    throw std::runtime_error("bandit checkpoint has wrong statistic dimensions");
  }
  a_inv_ = std::move(a_inv);
  b_ = std::move(b);
  pulls_ = pulls;
}

double RidgeArm::ucb_score(std::span<const double> x, double alpha) const {
  const auto t = solve(x);
  double est = 0.0;
  double q = 0.0;
  for (int i = 0; i < dim_; ++i) {
    est += b_[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)];
    q += x[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)];
  }
  return est + alpha * std::sqrt(std::max(0.0, q));
}

BanditModel::BanditModel(const AgentConfig& cfg, int dim) : cfg_(cfg), dim_(dim) {
  arms_.reserve(kNumActions);
  for (int i = 0; i < kNumActions; ++i) arms_.emplace_back(dim, cfg.lambda);
}

Action BanditModel::select(std::span<const double> x, std::span<const Action> candidates) const {
  if (candidates.empty()) throw std::invalid_argument("select: empty candidate set");
  Action best = candidates.front();
  double best_score = arms_[static_cast<std::size_t>(best)].ucb_score(x, cfg_.alpha);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const Action a = candidates[i];
    const double score = arms_[static_cast<std::size_t>(a)].ucb_score(x, cfg_.alpha);
    // strict improvement only: ties resolve to the earliest (lowest enum)
    if (score > best_score ||
        (score == best_score && static_cast<int>(a) < static_cast<int>(best))) {
      best = a;
      best_score = score;
    }
  }
  return best;
}

void BanditModel::update(std::span<const double> x, Action action, double reward, double weight) {
  arms_[static_cast<std::size_t>(action)].update(x, reward, weight);
}

std::string BanditModel::serialize() const {
  json arms = json::array();
  for (const auto& arm : arms_) {
    arms.push_back({{"a_inv", arm.a_inv()}, {"b", arm.b()}, {"pulls", arm.pulls()}});
  }
  json doc = {
      {"format", "pedsafe.bandit"},
      {"version", 1},
      {"dim", dim_},
      {"alpha", cfg_.alpha},
      {"lambda", cfg_.lambda},
      {"warm_start_steps", cfg_.warm_start_steps},
      {"arms", arms},
  };
  return doc.dump();
}

BanditModel BanditModel::deserialize(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.value("format", "") != "pedsafe.bandit") {
    throw std::runtime_error("not a bandit checkpoint");
  }
  AgentConfig cfg;
  cfg.alpha = doc.at("alpha").get<double>();
  cfg.lambda = doc.at("lambda").get<double>();
  cfg.warm_start_steps = doc.at("warm_start_steps").get<int>();
  BanditModel model(cfg, doc.at("dim").get<int>());
  const auto& arms = doc.at("arms");
  if (arms.size() != static_cast<std::size_t>(kNumActions)) {
    throw std::runtime_error("bandit checkpoint has wrong arm count");
  }
  for (int i = 0; i < kNumActions; ++i) {
    const auto& entry = arms[static_cast<std::size_t>(i)];
    model.arms_[static_cast<std::size_t>(i)].restore(
        entry.at("a_inv").get<std::vector<double>>(), entry.at("b").get<std::vector<double>>(),
        entry.at("pulls").get<int>());
  }
  return model;
}

}  // namespace pedsafe
