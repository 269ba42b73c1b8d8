#include "scenopt/scenario_tree.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "scenopt/errors.hpp"

namespace scenopt {

const std::vector<std::string>& ScenarioTree::states_at(int stage) const {
  if (stage < 1 || stage >= stage_count_)
    throw RangeError("realisation stage out of range: " + std::to_string(stage));
  return stage_states_[static_cast<std::size_t>(stage - 1)];
}

int ScenarioTree::state_index(int stage, const std::string& name) const {
  const auto& names = states_at(stage);
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    throw UnknownStateError("state '" + name + "' not declared at stage " + std::to_string(stage));
  return static_cast<int>(it - names.begin());
}

const std::vector<std::vector<int>>& ScenarioTree::successors(int stage) const {
  if (stage < 1 || stage >= stage_count_ - 1)
    throw RangeError("no successor relation at stage " + std::to_string(stage));
  return succ_[static_cast<std::size_t>(stage - 1)];
}

int ScenarioTree::node_count() const {
  int total = 0;
  for (const auto& stage : nodes_) total += static_cast<int>(stage.size());
  return total;
}

std::string ScenarioTree::node_label(int stage, int node) const {
  const Node& n = nodes_.at(stage).at(node);
  if (n.prefix.empty()) return "root";
  std::ostringstream out;
  for (std::size_t t = 0; t < n.prefix.size(); ++t) {
    if (t) out << '.';
    out << stage_states_[t][static_cast<std::size_t>(n.prefix[t])];
  }
  return out.str();
}

ScenarioTree build_tree(int stage_count, std::vector<std::vector<std::string>> states_per_stage,
                        const std::vector<Transitions>& transitions,
                        std::optional<std::string> root_state) {
  if (stage_count < 2) throw RangeError("stage_count must be at least 2");
  if (static_cast<int>(states_per_stage.size()) != stage_count - 1)
    throw EmptyStageError("expected " + std::to_string(stage_count - 1) +
                          " realisation-stage state lists, got " +
                          std::to_string(states_per_stage.size()));
  if (static_cast<int>(transitions.size()) != std::max(0, stage_count - 2))
    throw DanglingTransitionError("expected " + std::to_string(stage_count - 2) +
                                  " transition relations, got " +
                                  std::to_string(transitions.size()));

  ScenarioTree tree;
  tree.stage_count_ = stage_count;
  tree.root_state_ = std::move(root_state);
  tree.stage_states_ = std::move(states_per_stage);

  for (int t = 1; t < stage_count; ++t) {
    const auto& names = tree.stage_states_[static_cast<std::size_t>(t - 1)];
    if (names.empty())
      throw EmptyStageError("realisation stage " + std::to_string(t) + " has no states");
    std::set<std::string> seen;
    for (const auto& s : names)
      if (!seen.insert(s).second)
        throw DuplicateStateError("state '" + s + "' declared twice at stage " + std::to_string(t));
  }

  // Root reaches every declared stage-1 state.
  tree.root_children_.resize(tree.stage_states_[0].size());
  for (std::size_t i = 0; i < tree.root_children_.size(); ++i)
    tree.root_children_[i] = static_cast<int>(i);

  // Normalise adjacency to index lists ordered by the next stage's
  // declaration order; that order drives the lexicographic enumeration.
  tree.succ_.resize(transitions.size());
  for (int t = 1; t <= stage_count - 2; ++t) {
    const auto& here = tree.stage_states_[static_cast<std::size_t>(t - 1)];
    const auto& next = tree.stage_states_[static_cast<std::size_t>(t)];
    const Transitions& adj = transitions[static_cast<std::size_t>(t - 1)];
    auto index_of = [&](const std::vector<std::string>& names, const std::string& s) {
      auto it = std::find(names.begin(), names.end(), s);
      return it == names.end() ? -1 : static_cast<int>(it - names.begin());
    };
    for (const auto& [from, tos] : adj) {
      if (index_of(here, from) < 0)
        throw DanglingTransitionError("transition source '" + from + "' not declared at stage " +
                                      std::to_string(t));
      for (const auto& to : tos)
        if (index_of(next, to) < 0)
          throw DanglingTransitionError("transition target '" + to + "' not declared at stage " +
                                        std::to_string(t + 1));
    }
    auto& stage_succ = tree.succ_[static_cast<std::size_t>(t - 1)];
    stage_succ.assign(here.size(), {});
    std::vector<bool> reached(next.size(), false);
    for (std::size_t s = 0; s < here.size(); ++s) {
      auto it = adj.find(here[s]);
      if (it == adj.end() || it->second.empty())
        throw UnreachableStateError("state '" + here[s] + "' at stage " + std::to_string(t) +
                                    " has no admissible successor");
      std::set<int> targets;
      for (const auto& to : it->second) targets.insert(index_of(next, to));
      stage_succ[s].assign(targets.begin(), targets.end());
      for (int idx : targets) reached[static_cast<std::size_t>(idx)] = true;
    }
    for (std::size_t s = 0; s < next.size(); ++s)
      if (!reached[s])
        throw UnreachableStateError("state '" + next[s] + "' at stage " + std::to_string(t + 1) +
                                    " is unreachable");
  }

  // Enumerate decision nodes stage by stage; expanding parents in order
  // yields lexicographic prefixes by construction.
  tree.nodes_.resize(static_cast<std::size_t>(stage_count));
  tree.nodes_[0].push_back(ScenarioTree::Node{0, -1, {}, {}});
  for (int stage = 1; stage < stage_count; ++stage) {
    auto& parents = tree.nodes_[static_cast<std::size_t>(stage - 1)];
    auto& here = tree.nodes_[static_cast<std::size_t>(stage)];
    for (std::size_t pk = 0; pk < parents.size(); ++pk) {
      ScenarioTree::Node& parent = parents[pk];
      const std::vector<int>& branch =
          stage == 1 ? tree.root_children_
                     : tree.succ_[static_cast<std::size_t>(stage - 2)]
                                 [static_cast<std::size_t>(parent.prefix.back())];
      for (int state : branch) {
        ScenarioTree::Node node;
        node.stage = stage;
        node.parent = static_cast<int>(pk);
        node.prefix = parent.prefix;
        node.prefix.push_back(state);
        parent.children.push_back(static_cast<int>(here.size()));
        here.push_back(std::move(node));
      }
    }
  }
  return tree;
}

std::vector<ScenarioPath> enumerate_paths(const ScenarioTree& tree) {
  std::vector<ScenarioPath> paths;
  const auto& terminal = tree.nodes(tree.stage_count() - 1);
  paths.reserve(terminal.size());
  for (std::size_t k = 0; k < terminal.size(); ++k)
    paths.push_back(ScenarioPath{terminal[k].prefix, static_cast<int>(k)});
  return paths;
}

std::vector<MetaObjectiveId> meta_objectives(const ScenarioTree& tree, int m) {
  if (m < 1) throw RangeError("objective count must be positive");
  std::vector<MetaObjectiveId> ids;
  ids.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(tree.path_count()));
  for (int p = 0; p < tree.path_count(); ++p)
    for (int i = 0; i < m; ++i) ids.push_back(MetaObjectiveId{i, p});
  return ids;
}

}  // namespace scenopt
