#include "pedsafe/session.hpp"

#include <stdexcept>

#include "pedsafe/features.hpp"
#include "pedsafe/policy.hpp"
#include "pedsafe/rng.hpp"
#include "pedsafe/version.hpp"

namespace pedsafe {

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::EO: return "EO";
    case Condition::MAS: return "MAS";
    case Condition::MO: return "MO";
    case Condition::ST: return "ST";
    case Condition::NoC1: return "NoC1";
    case Condition::NoC3: return "NoC3";
  }
  return "ST";
}

Condition condition_from_name(std::string_view name) {
  for (Condition c : kAllConditions) {
    if (name == condition_name(c)) return c;
  }
  throw std::invalid_argument("unknown condition: " + std::string(name));
}

ConditionConfig condition_config(Condition c, const ConstraintParams& params) {
  ConditionConfig cfg;
  cfg.name = c;
  cfg.toggles.delta_min = params.delta_min;
  cfg.toggles.window = params.window_w;
  const RewardWeights multi_objective{0.3, 0.5, 0.2};
  switch (c) {
    case Condition::EO:
      cfg.weights = {1.0, 0.0, 0.0};
      break;
    case Condition::MAS:
      cfg.weights = {0.0, 1.0, 0.0};
      break;
    case Condition::MO:
      cfg.weights = multi_objective;
      break;
    case Condition::ST:
      cfg.weights = multi_objective;
      cfg.toggles.c1_enabled = true;
      cfg.toggles.c3_enabled = true;
      break;
    case Condition::NoC1:
      cfg.weights = multi_objective;
      cfg.toggles.c3_enabled = true;
      break;
    case Condition::NoC3:
      cfg.weights = multi_objective;
      cfg.toggles.c1_enabled = true;
      break;
  }
  return cfg;
}

SessionSummary summarize_session(const SessionLog& log, const ConceptGraph& graph,
                                 double theta_mastered) {
  SessionSummary s;
  MasteryVector mastery = log.header.initial_mastery;
  for (const auto& step : log.steps) {
    mastery[static_cast<std::size_t>(step.concept_idx)] += step.mastery_delta;
    s.cum_reward += step.reward;
    s.cum_r_eng += step.r_eng;
    s.cum_r_mas += step.r_mas;
  }
  double delta_sum = 0.0;
  for (int i = 0; i < graph.size(); ++i) {
    delta_sum += mastery[static_cast<std::size_t>(i)] -
                 log.header.initial_mastery[static_cast<std::size_t>(i)];
    if (mastery[static_cast<std::size_t>(i)] >= theta_mastered) ++s.n_mastered;
  }
  s.delta_k = graph.empty() ? 0.0 : delta_sum / graph.size();
  return s;
}

SessionLog run_session(const ConditionConfig& condition, const LearnerProfile& profile,
                       std::uint64_t seed, const ConceptGraph& graph,
                       const ConstraintParams& params, const SimConfig& sim,
                       const AgentConfig& agent, int session_length) {
  const char* cond_name = condition_name(condition.name);
  StudentState state = init_student(
      profile, graph, derive_seed(cond_name, profile.name, seed, "student"), sim);

  SessionLog log;
  log.header.condition = cond_name;
  log.header.profile = profile.name;
  log.header.seed = seed;
  log.header.session_length = session_length;
  log.header.params = params;
  log.header.initial_mastery = state.mastery;
  log.header.version = std::string(kVersion);
  log.steps.reserve(static_cast<std::size_t>(session_length));

  BanditModel model(agent, kFeatureDim);
  SessionContext ctx(graph.size(), params.window_w, session_length);
  const DemandMap demands;

  for (int t = 0; t < session_length; ++t) {
    const auto access = accessible_set(graph, state.mastery, params.theta_min);
    const auto features = featurize(state, graph, ctx, params.theta_min, params.theta_mastered);
    const auto recent = ctx.recent_demands(params.window_w - 1);
    const auto candidates = candidate_pairs(state, graph, condition.toggles, recent,
                                            params.theta_min, params.theta_mastered, demands);

    const Action action = warm_or_select(model, features, candidates.actions, t);
    const int concept = candidates.concept_idx;

    // pre-update quantities that feed the reward
    const bool accessible_flag = access[static_cast<std::size_t>(concept)] != 0;
    const double approp =
        appropriateness(action, concept, state, graph, params.theta_min, demands);
    const double eng_delta = engagement_delta(action, state.mastery[static_cast<std::size_t>(concept)]);

    const StepOutcome outcome = apply_action(state, action, concept, graph, sim);
    const ComposedReward composed =
        compose_reward(condition.weights, eng_delta, outcome.mastery_delta, approp);

    model.update(features, action, composed.reward);

    StepRecord rec;
    rec.t = t;
    rec.concept_idx = concept;
    rec.action = action;
    rec.demand = demands(action);
    rec.mastery_delta = outcome.mastery_delta;
    rec.engagement_delta = outcome.engagement_delta;
    rec.confusion = state.confusion;
    rec.r_eng = composed.components.r_eng;
    rec.r_mas = composed.components.r_mas;
    rec.r_ped = composed.components.r_ped;
    rec.reward = composed.reward;
    rec.accessible = accessible_flag;
    rec.appropriate = approp > 0.0;
    log.steps.push_back(rec);

    ctx.record(action, concept, demands(action));
  }

  log.summary = summarize_session(log, graph, params.theta_mastered);
  return log;
}

}  // namespace pedsafe
