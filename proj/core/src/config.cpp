#include "pedsafe/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pedsafe {

using nlohmann::json;

RunConfig::RunConfig() {
  profile_set.assign(default_profiles().begin(), default_profiles().end());
}

const LearnerProfile& RunConfig::profile(std::string_view name) const {
  for (const auto& p : profile_set) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("profile not in config: " + std::string(name));
}

namespace {

void apply_params(const json& j, ConstraintParams& p) {
  p.theta_min = j.value("theta_min", p.theta_min);
  p.theta_mastered = j.value("theta_mastered", p.theta_mastered);
  p.window_w = j.value("window_w", p.window_w);
  p.eps_prog = j.value("eps_prog", p.eps_prog);
  p.delta_min = j.value("delta_min", p.delta_min);
  p.rho_max = j.value("rho_max", p.rho_max);
  p.warmup_w0 = j.value("warmup_w0", p.warmup_w0);
  p.c0 = j.value("c0", p.c0);
  p.w2 = j.value("w2", p.w2);
  p.w3 = j.value("w3", p.w3);
  p.w4 = j.value("w4", p.w4);
}

void apply_sim(const json& j, SimConfig& s) {
  s.init_noise_half_width = j.value("init_noise_half_width", s.init_noise_half_width);
  s.confusion_suppression = j.value("confusion_suppression", s.confusion_suppression);
  s.confusion_spike = j.value("confusion_spike", s.confusion_spike);
  s.confusion_relief = j.value("confusion_relief", s.confusion_relief);
  s.confusion_decay = j.value("confusion_decay", s.confusion_decay);
  s.unprepared_mastery = j.value("unprepared_mastery", s.unprepared_mastery);
  if (j.contains("mastery_gains")) {
    for (const auto& [name, value] : j.at("mastery_gains").items()) {
      const Action a = action_from_name(name);
      s.mastery_gains[static_cast<std::size_t>(a)] = value.get<double>();
    }
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config parse error: ") + e.what());
  }

  RunConfig cfg;
  if (doc.contains("conditions")) {
    cfg.matrix.conditions.clear();
    for (const auto& c : doc["conditions"]) {
      cfg.matrix.conditions.push_back(condition_from_name(c.get<std::string>()));
    }
  }
  if (doc.contains("profiles")) {
    cfg.matrix.profiles = doc["profiles"].get<std::vector<std::string>>();
  }
  if (doc.contains("seeds")) {
    cfg.matrix.seeds = doc["seeds"].get<std::vector<std::uint64_t>>();
  }
  cfg.matrix.session_length = doc.value("session_length", cfg.matrix.session_length);
  cfg.curriculum_path = doc.value("curriculum", cfg.curriculum_path);

  if (doc.contains("params")) apply_params(doc["params"], cfg.params);
  if (doc.contains("sim")) apply_sim(doc["sim"], cfg.sim);
  if (doc.contains("agent")) {
    const auto& a = doc["agent"];
    cfg.agent.alpha = a.value("alpha", cfg.agent.alpha);
    cfg.agent.lambda = a.value("lambda", cfg.agent.lambda);
    cfg.agent.warm_start_steps = a.value("warm_start_steps", cfg.agent.warm_start_steps);
  }
  if (doc.contains("profile_overrides")) {
    for (const auto& entry : doc["profile_overrides"]) {
      const std::string name = entry.at("name").get<std::string>();
      LearnerProfile* target = nullptr;
      for (auto& p : cfg.profile_set) {
        if (p.name == name) target = &p;
      }
      if (target == nullptr) {
        cfg.profile_set.push_back(LearnerProfile{name, 0.15, 1.0, 0.5, 1.0});
        target = &cfg.profile_set.back();
      }
      target->initial_knowledge = entry.value("initial_knowledge", target->initial_knowledge);
      target->gain_multiplier = entry.value("gain_multiplier", target->gain_multiplier);
      target->confusion_threshold = entry.value("confusion_threshold", target->confusion_threshold);
      target->engagement_sensitivity =
          entry.value("engagement_sensitivity", target->engagement_sensitivity);
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string run_config_to_json(const RunConfig& cfg) {
  json conditions = json::array();
  for (Condition c : cfg.matrix.conditions) conditions.push_back(condition_name(c));

  json profiles = json::array();
  for (const auto& p : cfg.profile_set) {
    profiles.push_back({
        {"name", p.name},
        {"initial_knowledge", p.initial_knowledge},
        {"gain_multiplier", p.gain_multiplier},
        {"confusion_threshold", p.confusion_threshold},
        {"engagement_sensitivity", p.engagement_sensitivity},
    });
  }

  json actions = json::array();
  for (const auto& info : action_table()) {
    actions.push_back({
        {"name", info.name},
        {"demand", info.demand},
        {"base_engagement_delta", info.base_engagement_delta},
        {"base_mastery_gain", cfg.sim.mastery_gains[static_cast<std::size_t>(info.action)]},
    });
  }

  const json doc = {
      {"conditions", conditions},
      {"profiles", cfg.matrix.profiles},
      {"seeds", cfg.matrix.seeds},
      {"session_length", cfg.matrix.session_length},
      {"curriculum", cfg.curriculum_path},
      {"params",
       {{"theta_min", cfg.params.theta_min},
        {"theta_mastered", cfg.params.theta_mastered},
        {"window_w", cfg.params.window_w},
        {"eps_prog", cfg.params.eps_prog},
        {"delta_min", cfg.params.delta_min},
        {"rho_max", cfg.params.rho_max},
        {"warmup_w0", cfg.params.warmup_w0},
        {"c0", cfg.params.c0},
        {"w2", cfg.params.w2},
        {"w3", cfg.params.w3},
        {"w4", cfg.params.w4}}},
      {"sim",
       {{"init_noise_half_width", cfg.sim.init_noise_half_width},
        {"confusion_suppression", cfg.sim.confusion_suppression},
        {"confusion_spike", cfg.sim.confusion_spike},
        {"confusion_relief", cfg.sim.confusion_relief},
        {"confusion_decay", cfg.sim.confusion_decay},
        {"unprepared_mastery", cfg.sim.unprepared_mastery}}},
      {"agent",
       {{"alpha", cfg.agent.alpha},
        {"lambda", cfg.agent.lambda},
        {"warm_start_steps", cfg.agent.warm_start_steps}}},
      {"profile_set", profiles},
      {"action_table", actions},
  };
  return doc.dump(2);
}

std::uint64_t seed_offset_from_env() {
  const char* value = std::getenv("PEDSAFE_SEED_OFFSET");
  if (value == nullptr || *value == '\0') return 0;
  return std::strtoull(value, nullptr, 10);
}

}  // namespace pedsafe
