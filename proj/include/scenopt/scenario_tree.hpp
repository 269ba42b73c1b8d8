#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scenopt {

/// Adjacency from a state at one realisation stage to the admissible states
/// at the next realisation stage.
using Transitions = std::map<std::string, std::vector<std::string>>;

/// One realized state sequence through the tree, one state per realisation
/// stage. `index` is the position in the deterministic enumeration.
struct ScenarioPath {
  std::vector<int> states;  // state index per realisation stage
  int index = 0;

  bool operator==(const ScenarioPath&) const = default;
};

/// An (objective, scenario path) pair: the unit of evaluation and preference.
struct MetaObjectiveId {
  int objective = 0;  // 0-based objective index
  int path = 0;       // index into the path enumeration

  bool operator==(const MetaObjectiveId&) const = default;
};

/// Immutable T-stage scenario structure: per-stage states, parent-dependent
/// transitions and the enumerated decision nodes. Stage 0 is the single
/// scenario-free root node; realisation stages are 1..T-1. Safe to share
/// across threads once built.
class ScenarioTree {
 public:
  struct Node {
    int stage = 0;
    int parent = -1;           // index into nodes(stage-1); -1 at the root
    std::vector<int> prefix;   // realized state indices (k1..kt); empty at root
    std::vector<int> children; // indices into nodes(stage+1)

    bool operator==(const Node&) const = default;
  };

  int stage_count() const { return stage_count_; }

  /// States declared for realisation stage t (1..T-1).
  const std::vector<std::string>& states_at(int stage) const;
  int state_count(int stage) const { return static_cast<int>(states_at(stage).size()); }
  const std::string& state_name(int stage, int idx) const { return states_at(stage).at(idx); }
  int state_index(int stage, const std::string& name) const;  // UnknownStateError if absent

  const std::optional<std::string>& root_state() const { return root_state_; }

  /// Successor state indices per state at realisation stage t (valid for
  /// t = 1..T-2).
  const std::vector<std::vector<int>>& successors(int stage) const;

  /// Stage-1 state indices admissible from the root.
  const std::vector<int>& root_children() const { return root_children_; }

  /// Decision nodes of a stage (0..T-1), in deterministic enumeration order.
  const std::vector<Node>& nodes(int stage) const { return nodes_.at(stage); }
  int node_count(int stage) const { return static_cast<int>(nodes_.at(stage).size()); }
  int node_count() const;  // all stages
  int path_count() const { return node_count(stage_count_ - 1); }

  /// Human-readable node label, e.g. "S2.S1"; "root" at stage 0.
  std::string node_label(int stage, int node) const;
  std::string path_label(int path) const { return node_label(stage_count_ - 1, path); }

  bool operator==(const ScenarioTree&) const = default;

 private:
  friend ScenarioTree build_tree(int, std::vector<std::vector<std::string>>,
                                 const std::vector<Transitions>&, std::optional<std::string>);

  int stage_count_ = 0;
  std::vector<std::vector<std::string>> stage_states_;  // [t-1] holds stage t
  std::optional<std::string> root_state_;
  std::vector<int> root_children_;
  std::vector<std::vector<std::vector<int>>> succ_;  // [t-1][state] -> next-stage states
  std::vector<std::vector<Node>> nodes_;             // [stage][k]
};

/// Validates and builds a scenario tree.
///
/// `transitions` holds one adjacency per realisation-stage gap
/// (t -> t+1 for t = 1..T-2), so it is empty for T = 2. Successor lists are
/// normalised to the declared order of the next stage's states, which fixes
/// the lexicographic path enumeration.
///
/// Throws EmptyStageError, DanglingTransitionError, UnreachableStateError,
/// DuplicateStateError or RangeError (stage_count < 2).
ScenarioTree build_tree(int stage_count, std::vector<std::vector<std::string>> states_per_stage,
                        const std::vector<Transitions>& transitions,
                        std::optional<std::string> root_state = std::nullopt);

/// All scenario paths in deterministic lexicographic order.
std::vector<ScenarioPath> enumerate_paths(const ScenarioTree& tree);

/// The m x path_count meta-objective ids, path-major and objective-minor.
std::vector<MetaObjectiveId> meta_objectives(const ScenarioTree& tree, int m);

}  // namespace scenopt
