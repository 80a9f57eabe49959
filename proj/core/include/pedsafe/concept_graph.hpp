#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pedsafe {

enum class Difficulty { Beginner, Intermediate, Advanced };

const char* difficulty_name(Difficulty d);
Difficulty difficulty_from_name(std::string_view name);

struct ConceptNode {
  std::string id;    // stable identifier, e.g. "c01"
  std::string name;  // display name
  std::vector<std::string> prereq_ids;
  Difficulty difficulty = Difficulty::Beginner;
  int depth = 0;  // longest path from any root
};

// Per-concept mastery estimates in [0,1], indexed in graph order.
using MasteryVector = std::vector<double>;

// Prerequisite DAG over the curriculum concepts. Immutable after load;
// concepts are kept in lexicographic id order so every vector keyed by
// concept index serializes deterministically.
class ConceptGraph {
 public:
  // Parses and validates a curriculum document. Throws std::runtime_error on
  // cycles, duplicate ids, dangling prerequisites, or a declared depth that
  // disagrees with the recomputed one.
  static ConceptGraph parse(std::string_view json_text);
  static ConceptGraph load_file(const std::string& path);

  int size() const { return static_cast<int>(nodes_.size()); }
  bool empty() const { return nodes_.empty(); }
  const ConceptNode& node(int idx) const { return nodes_[static_cast<std::size_t>(idx)]; }
  const std::vector<ConceptNode>& nodes() const { return nodes_; }

  // prerequisite indices of a concept (resolved from ids)
  const std::vector<int>& prereqs(int idx) const { return prereq_idx_[static_cast<std::size_t>(idx)]; }
  const std::vector<int>& roots() const { return root_idx_; }

  int index_of(std::string_view id) const;  // -1 when absent
  int require_index(std::string_view id) const;  // throws when absent
  int max_depth() const;

  // Recomputes every depth from the edge structure. A validated graph is a
  // fixpoint: the result equals the stored depths.
  std::vector<int> recompute_depths() const;

  std::string to_json_text() const;

 private:
  ConceptGraph() = default;
  void finalize();  // sort, resolve edges, check DAG and depths

  std::vector<ConceptNode> nodes_;
  std::vector<std::vector<int>> prereq_idx_;
  std::vector<int> root_idx_;
};

// Concepts whose prerequisites all meet the mastery threshold. Concepts with
// no prerequisites are always included. Returns one flag per concept.
std::vector<std::uint8_t> accessible_set(const ConceptGraph& graph, const MasteryVector& mastery,
                                         double theta_min);

// ids of the accessible concepts, in graph order
std::vector<std::string> accessible_ids(const ConceptGraph& graph, const MasteryVector& mastery,
                                        double theta_min);

// True iff the accessible set under `before` is contained in the accessible
// set under `after`. Requires after >= before elementwise (throws otherwise).
bool validate_monotone_expansion(const ConceptGraph& graph, const MasteryVector& before,
                                 const MasteryVector& after, double theta_min);

}  // namespace pedsafe
