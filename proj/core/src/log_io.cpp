#include "pedsafe/log_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pedsafe {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json params_to_json(const ConstraintParams& p) {
  return {
      {"theta_min", p.theta_min},   {"theta_mastered", p.theta_mastered},
      {"window_w", p.window_w},     {"eps_prog", p.eps_prog},
      {"delta_min", p.delta_min},   {"rho_max", p.rho_max},
      {"warmup_w0", p.warmup_w0},   {"c0", p.c0},
      {"w2", p.w2},                 {"w3", p.w3},
      {"w4", p.w4},
  };
}

ConstraintParams params_from_json(const json& j) {
  ConstraintParams p;
  p.theta_min = j.at("theta_min").get<double>();
  p.theta_mastered = j.at("theta_mastered").get<double>();
  p.window_w = j.at("window_w").get<int>();
  p.eps_prog = j.at("eps_prog").get<double>();
  p.delta_min = j.at("delta_min").get<double>();
  p.rho_max = j.at("rho_max").get<double>();
  p.warmup_w0 = j.at("warmup_w0").get<int>();
  p.c0 = j.at("c0").get<double>();
  p.w2 = j.at("w2").get<double>();
  p.w3 = j.at("w3").get<double>();
  p.w4 = j.at("w4").get<double>();
  return p;
}

}  // namespace

std::string session_to_jsonl(const SessionLog& log, const ConceptGraph& graph) {
  std::ostringstream out;
  const json header = {
      {"type", "header"},
      {"condition", log.header.condition},
      {"profile", log.header.profile},
      {"seed", log.header.seed},
      {"session_length", log.header.session_length},
      {"params", params_to_json(log.header.params)},
      {"initial_mastery", log.header.initial_mastery},
      {"version", log.header.version},
  };
  out << header.dump() << '\n';
  for (const auto& s : log.steps) {
    const json step = {
        {"type", "step"},
        {"t", s.t},
        {"concept", graph.node(s.concept_idx).id},
        {"action", action_name(s.action)},
        {"demand", s.demand},
        {"mastery_delta", s.mastery_delta},
        {"engagement_delta", s.engagement_delta},
        {"confusion", s.confusion},
        {"r_eng", s.r_eng},
        {"r_mas", s.r_mas},
        {"r_ped", s.r_ped},
        {"reward", s.reward},
        {"accessible", s.accessible},
        {"appropriate", s.appropriate},
    };
    out << step.dump() << '\n';
  }
  const json summary = {
      {"type", "summary"},
      {"delta_k", log.summary.delta_k},
      {"n_mastered", log.summary.n_mastered},
      {"cum_reward", log.summary.cum_reward},
      {"cum_r_eng", log.summary.cum_r_eng},
      {"cum_r_mas", log.summary.cum_r_mas},
  };
  out << summary.dump() << '\n';
  return out.str();
}

SessionLog session_from_jsonl(const std::string& text, const ConceptGraph& graph,
                              const std::string& source_name) {
  SessionLog log;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  bool have_summary = false;

  auto fail = [&](const std::string& what) -> std::runtime_error {
    return std::runtime_error(source_name + ":" + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw fail(std::string("malformed log line: ") + e.what());
    }
    const std::string type = j.value("type", "");
    if (type == "header") {
      log.header.condition = j.at("condition").get<std::string>();
      log.header.profile = j.at("profile").get<std::string>();
      log.header.seed = j.at("seed").get<std::uint64_t>();
      log.header.session_length = j.at("session_length").get<int>();
      log.header.params = params_from_json(j.at("params"));
      log.header.initial_mastery = j.at("initial_mastery").get<MasteryVector>();
      log.header.version = j.value("version", "");
      have_header = true;
    } else if (type == "step") {
      if (!have_header) throw fail("step record before header");
      StepRecord s;
      s.t = j.at("t").get<int>();
      s.concept_idx = graph.require_index(j.at("concept").get<std::string>());
      s.action = action_from_name(j.at("action").get<std::string>());
      s.demand = j.at("demand").get<double>();
      s.mastery_delta = j.at("mastery_delta").get<double>();
      s.engagement_delta = j.at("engagement_delta").get<double>();
      s.confusion = j.at("confusion").get<double>();
      s.r_eng = j.at("r_eng").get<double>();
      s.r_mas = j.at("r_mas").get<double>();
      s.r_ped = j.at("r_ped").get<double>();
      s.reward = j.at("reward").get<double>();
      s.accessible = j.at("accessible").get<bool>();
      s.appropriate = j.at("appropriate").get<bool>();
      log.steps.push_back(s);
    } else if (type == "summary") {
      log.summary.delta_k = j.at("delta_k").get<double>();
      log.summary.n_mastered = j.at("n_mastered").get<int>();
      log.summary.cum_reward = j.at("cum_reward").get<double>();
      log.summary.cum_r_eng = j.at("cum_r_eng").get<double>();
      log.summary.cum_r_mas = j.at("cum_r_mas").get<double>();
      have_summary = true;
    } else {
      throw fail("unknown record type '" + type + "'");
    }
  }
  if (!have_header) throw std::runtime_error(source_name + ": missing header record");
  if (!have_summary) throw std::runtime_error(source_name + ": missing summary record");
  return log;
}

void write_text_file(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.good()) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

void write_session_file(const SessionLog& log, const ConceptGraph& graph,
                        const std::string& path) {
  write_text_file(path, session_to_jsonl(log, graph));
}

SessionLog read_session_file(const std::string& path, const ConceptGraph& graph) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open log file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return session_from_jsonl(buf.str(), graph, path);
}

std::vector<SessionLog> read_log_directory(const std::string& dir, const ConceptGraph& graph) {
  if (!fs::exists(dir)) throw std::runtime_error("log directory does not exist: " + dir);
  std::vector<std::string> paths;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<SessionLog> logs;
  logs.reserve(paths.size());
  for (const auto& p : paths) logs.push_back(read_session_file(p, graph));
  return logs;
}

}  // namespace pedsafe
