#include "pedsafe/concept_graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace pedsafe {

using nlohmann::json;

const char* difficulty_name(Difficulty d) {
  switch (d) {
    case Difficulty::Beginner: return "Beginner";
    case Difficulty::Intermediate: return "Intermediate";
    case Difficulty::Advanced: return "Advanced";
  }
  return "Beginner";
}

Difficulty difficulty_from_name(std::string_view name) {
  if (name == "Beginner") return Difficulty::Beginner;
  if (name == "Intermediate") return Difficulty::Intermediate;
  if (name == "Advanced") return Difficulty::Advanced;
  throw std::runtime_error("unknown difficulty: " + std::string(name));
}

ConceptGraph ConceptGraph::parse(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("curriculum parse error: ") + e.what());
  }
  if (!doc.contains("concepts") || !doc["concepts"].is_array()) {
    throw std::runtime_error("curriculum document missing 'concepts' array");
  }

  ConceptGraph graph;
  for (const auto& entry : doc["concepts"]) {
    ConceptNode node;
    node.id = entry.at("id").get<std::string>();
    node.name = entry.value("name", node.id);
    node.difficulty = difficulty_from_name(entry.value("difficulty", "Beginner"));
    node.depth = entry.value("depth", -1);  // -1: not declared, recompute only
    if (entry.contains("prerequisites")) {
      for (const auto& p : entry["prerequisites"]) {
        node.prereq_ids.push_back(p.get<std::string>());
      }
    }
    graph.nodes_.push_back(std::move(node));
  }
  graph.finalize();
  return graph;
}

ConceptGraph ConceptGraph::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open curriculum file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void ConceptGraph::finalize() {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const ConceptNode& a, const ConceptNode& b) { return a.id < b.id; });

  std::unordered_map<std::string, int> index;
  for (int i = 0; i < size(); ++i) {
    auto [it, inserted] = index.emplace(nodes_[static_cast<std::size_t>(i)].id, i);
    if (!inserted) {
      throw std::runtime_error("duplicate concept id: " + nodes_[static_cast<std::size_t>(i)].id);
    }
  }

  prereq_idx_.assign(nodes_.size(), {});
  root_idx_.clear();
  for (int i = 0; i < size(); ++i) {
    const auto& node = nodes_[static_cast<std::size_t>(i)];
    for (const auto& pid : node.prereq_ids) {
      auto it = index.find(pid);
      if (it == index.end()) {
        throw std::runtime_error("dangling prerequisite '" + pid + "' of concept " + node.id);
      }
      prereq_idx_[static_cast<std::size_t>(i)].push_back(it->second);
    }
    if (node.prereq_ids.empty()) root_idx_.push_back(i);
  }

  const auto depths = recompute_depths();  // throws on cycles
  for (int i = 0; i < size(); ++i) {
    auto& node = nodes_[static_cast<std::size_t>(i)];
    // declared depths are checksums against hand-edit drift, not ground truth
    if (node.depth >= 0 && node.depth != depths[static_cast<std::size_t>(i)]) {
      throw std::runtime_error("declared depth " + std::to_string(node.depth) + " of concept " +
                               node.id + " disagrees with recomputed depth " +
                               std::to_string(depths[static_cast<std::size_t>(i)]));
    }
    node.depth = depths[static_cast<std::size_t>(i)];
  }
}

std::vector<int> ConceptGraph::recompute_depths() const {
  const auto n = nodes_.size();
  // Kahn's algorithm; depth = longest path from any root
  std::vector<int> in_degree(n, 0);
  std::vector<std::vector<int>> dependents(n);
  for (std::size_t i = 0; i < n; ++i) {
    in_degree[i] = static_cast<int>(prereq_idx_[i].size());
    for (int p : prereq_idx_[i]) dependents[static_cast<std::size_t>(p)].push_back(static_cast<int>(i));
  }

  std::vector<int> depth(n, 0);
  std::vector<int> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_degree[i] == 0) queue.push_back(static_cast<int>(i));
  }
  std::size_t processed = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    ++processed;
    for (int v : dependents[static_cast<std::size_t>(u)]) {
      depth[static_cast<std::size_t>(v)] =
          std::max(depth[static_cast<std::size_t>(v)], depth[static_cast<std::size_t>(u)] + 1);
      if (--in_degree[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    }
  }
  if (processed != n) {
    throw std::runtime_error("prerequisite cycle detected in curriculum");
  }
  return depth;
}

int ConceptGraph::index_of(std::string_view id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const ConceptNode& n, std::string_view v) { return n.id < v; });
  if (it == nodes_.end() || it->id != id) return -1;
  return static_cast<int>(it - nodes_.begin());
}

int ConceptGraph::require_index(std::string_view id) const {
  const int idx = index_of(id);
  if (idx < 0) throw std::runtime_error("unknown concept id: " + std::string(id));
  return idx;
}

int ConceptGraph::max_depth() const {
  int m = 0;
  for (const auto& node : nodes_) m = std::max(m, node.depth);
  return m;
}

std::string ConceptGraph::to_json_text() const {
  json concepts = json::array();
  for (const auto& node : nodes_) {
    concepts.push_back({
        {"id", node.id},
        {"name", node.name},
        {"prerequisites", node.prereq_ids},
        {"difficulty", difficulty_name(node.difficulty)},
        {"depth", node.depth},
    });
  }
  return json{{"concepts", concepts}}.dump(2);
}

std::vector<std::uint8_t> accessible_set(const ConceptGraph& graph, const MasteryVector& mastery,
                                         double theta_min) {
  if (static_cast<int>(mastery.size()) != graph.size()) {
    throw std::invalid_argument("mastery dimension does not match concept count");
  }
  std::vector<std::uint8_t> access(mastery.size(), 1);
  for (int i = 0; i < graph.size(); ++i) {
    for (int p : graph.prereqs(i)) {
      if (mastery[static_cast<std::size_t>(p)] < theta_min) {
        access[static_cast<std::size_t>(i)] = 0;
        break;
      }
    }
  }
  return access;
}

std::vector<std::string> accessible_ids(const ConceptGraph& graph, const MasteryVector& mastery,
                                        double theta_min) {
  const auto mask = accessible_set(graph, mastery, theta_min);
  std::vector<std::string> ids;
  for (int i = 0; i < graph.size(); ++i) {
    if (mask[static_cast<std::size_t>(i)]) ids.push_back(graph.node(i).id);
  }
  return ids;
}

bool validate_monotone_expansion(const ConceptGraph& graph, const MasteryVector& before,
                                 const MasteryVector& after, double theta_min) {
  if (before.size() != after.size()) {
    throw std::invalid_argument("mastery vectors differ in length");
  }
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (after[i] < before[i]) {
      throw std::invalid_argument("mastery did not increase elementwise");
    }
  }
  const auto a = accessible_set(graph, before, theta_min);
  const auto b = accessible_set(graph, after, theta_min);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

}  // namespace pedsafe
