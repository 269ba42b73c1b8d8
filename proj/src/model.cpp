#include "scenopt/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scenopt/errors.hpp"

namespace scenopt {

const char* to_string(DominanceResult r) {
  switch (r) {
    case DominanceResult::Dominates: return "Dominates";
    case DominanceResult::DominatedBy: return "DominatedBy";
    case DominanceResult::Incomparable: return "Incomparable";
    case DominanceResult::Equal: return "Equal";
  }
  return "?";
}

int MSMOModel::column(int stage, int node, int j) const {
  return column_offset_.at(static_cast<std::size_t>(stage)).at(static_cast<std::size_t>(node)) + j;
}

std::string MSMOModel::column_name(int col) const {
  for (int stage = 0; stage < stage_count(); ++stage) {
    const int width = stage_width(stage);
    for (int node = 0; node < tree_.node_count(stage); ++node) {
      const int base = column_offset_[static_cast<std::size_t>(stage)][static_cast<std::size_t>(node)];
      if (col >= base && col < base + width) {
        const int j = col - base;
        std::string local;
        if (!blocks_.var_names.empty() && !blocks_.var_names[static_cast<std::size_t>(stage)].empty())
          local = blocks_.var_names[static_cast<std::size_t>(stage)][static_cast<std::size_t>(j)];
        else
          local = "x" + std::to_string(stage) + "_" + std::to_string(j);
        if (stage == 0) return local;
        std::string label = tree_.node_label(stage, node);
        std::replace(label.begin(), label.end(), '.', '_');
        return local + "_" + label;
      }
    }
  }
  throw RangeError("column out of range: " + std::to_string(col));
}

int MSMOModel::matrix_column(const MetaRef& ref) const {
  if (scoring_ == ScoringMode::TerminalPath) return ref.path;
  int offset = 0;
  for (int s = 0; s < ref.stage; ++s) offset += tree_.node_count(s);
  return offset + ref.node;
}

std::vector<double> MSMOModel::z_row(int objective, int stage, int node) const {
  std::vector<double> row(static_cast<std::size_t>(total_columns_), 0.0);
  // Walk the ancestry from the node up to the root, adding each visited
  // node's term; term blocks reach back to stage 0 along the same ancestry.
  int cur_stage = stage;
  int cur_node = node;
  std::vector<int> ancestry(static_cast<std::size_t>(stage + 1));
  while (cur_stage >= 0) {
    ancestry[static_cast<std::size_t>(cur_stage)] = cur_node;
    cur_node = tree_.nodes(cur_stage)[static_cast<std::size_t>(cur_node)].parent;
    --cur_stage;
  }
  for (int s = 0; s <= stage; ++s) {
    const ObjectiveTerm& term =
        blocks_.objectives[static_cast<std::size_t>(objective)][static_cast<std::size_t>(s)]
                          [static_cast<std::size_t>(ancestry[static_cast<std::size_t>(s)])];
    for (int t = 0; t <= s; ++t) {
      const auto& block = term.blocks[static_cast<std::size_t>(t)];
      const int base = column(t, ancestry[static_cast<std::size_t>(t)], 0);
      for (std::size_t j = 0; j < block.size(); ++j)
        row[static_cast<std::size_t>(base) + j] += block[j];
    }
  }
  return row;
}

LPProblem MSMOModel::structural_lp() const {
  LPProblem lp;
  lp.sense = Sense::Minimize;
  lp.cost.assign(static_cast<std::size_t>(total_columns_), 0.0);
  lp.lower.assign(static_cast<std::size_t>(total_columns_), nonnegative_ ? 0.0 : -kInfinity);
  lp.upper.assign(static_cast<std::size_t>(total_columns_), kInfinity);
  lp.var_names.resize(static_cast<std::size_t>(total_columns_));
  for (int c = 0; c < total_columns_; ++c)
    lp.var_names[static_cast<std::size_t>(c)] = column_name(c);

  for (int stage = 0; stage < stage_count(); ++stage) {
    for (int node = 0; node < tree_.node_count(stage); ++node) {
      // Resolve the ancestry once per node.
      std::vector<int> ancestry(static_cast<std::size_t>(stage + 1));
      int cs = stage, cn = node;
      while (cs >= 0) {
        ancestry[static_cast<std::size_t>(cs)] = cn;
        cn = tree_.nodes(cs)[static_cast<std::size_t>(cn)].parent;
        --cs;
      }
      for (const ConstraintRow& row :
           blocks_.rows[static_cast<std::size_t>(stage)][static_cast<std::size_t>(node)]) {
        std::vector<double> coeffs(static_cast<std::size_t>(total_columns_), 0.0);
        for (int t = 0; t <= stage; ++t) {
          const auto& block = row.blocks[static_cast<std::size_t>(t)];
          const int base = column(t, ancestry[static_cast<std::size_t>(t)], 0);
          for (std::size_t j = 0; j < block.size(); ++j)
            coeffs[static_cast<std::size_t>(base) + j] += block[j];
        }
        lp.add_row(std::move(coeffs), row.rel, row.rhs);
      }
    }
  }
  return lp;
}

MSMOModel assemble(ScenarioTree tree, StageBlocks blocks, int m, std::vector<Sense> senses,
                   ScoringMode scoring, bool nonnegative) {
  const int T = tree.stage_count();
  if (static_cast<int>(blocks.var_widths.size()) != T)
    throw WidthMismatchError("var_widths must declare one width per stage");
  for (int w : blocks.var_widths)
    if (w < 0) throw WidthMismatchError("negative stage width");
  if (!blocks.var_names.empty()) {
    if (static_cast<int>(blocks.var_names.size()) != T)
      throw WidthMismatchError("var_names must cover every stage when present");
    for (int t = 0; t < T; ++t)
      if (!blocks.var_names[static_cast<std::size_t>(t)].empty() &&
          static_cast<int>(blocks.var_names[static_cast<std::size_t>(t)].size()) !=
              blocks.var_widths[static_cast<std::size_t>(t)])
        throw WidthMismatchError("var_names width mismatch at stage " + std::to_string(t));
  }
  if (m < 1) throw RangeError("objective count must be positive");
  if (static_cast<int>(senses.size()) != m)
    throw ShapeMismatchError("need one sense per objective");

  if (static_cast<int>(blocks.rows.size()) != T)
    throw PrefixMismatchError("constraint blocks must cover every stage");
  if (static_cast<int>(blocks.objectives.size()) != m)
    throw PrefixMismatchError("objective blocks must cover every objective");

  auto check_blocks = [&](const std::vector<std::vector<double>>& bl, int stage, const char* what) {
    if (static_cast<int>(bl.size()) != stage + 1)
      throw PrefixMismatchError(std::string(what) + " at stage " + std::to_string(stage) +
                                " must carry one block per stage 0.." + std::to_string(stage));
    for (int t = 0; t <= stage; ++t) {
      if (static_cast<int>(bl[static_cast<std::size_t>(t)].size()) !=
          blocks.var_widths[static_cast<std::size_t>(t)])
        throw WidthMismatchError(std::string(what) + " block width mismatch at stage " +
                                 std::to_string(t));
      for (double v : bl[static_cast<std::size_t>(t)])
        if (!std::isfinite(v)) throw MalformedProblemError("non-finite block coefficient");
    }
  };

  for (int stage = 0; stage < T; ++stage) {
    const int nodes = tree.node_count(stage);
    if (static_cast<int>(blocks.rows[static_cast<std::size_t>(stage)].size()) != nodes)
      throw PrefixMismatchError("constraint blocks at stage " + std::to_string(stage) +
                                " must cover " + std::to_string(nodes) + " nodes");
    std::size_t per_node = blocks.rows[static_cast<std::size_t>(stage)].empty()
                               ? 0
                               : blocks.rows[static_cast<std::size_t>(stage)][0].size();
    for (const auto& node_rows : blocks.rows[static_cast<std::size_t>(stage)]) {
      if (node_rows.size() != per_node)
        throw PrefixMismatchError("ragged row counts at stage " + std::to_string(stage));
      for (const ConstraintRow& row : node_rows) {
        check_blocks(row.blocks, stage, "constraint row");
        if (!std::isfinite(row.rhs)) throw MalformedProblemError("non-finite rhs");
      }
    }
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(blocks.objectives[static_cast<std::size_t>(i)].size()) != T)
        throw PrefixMismatchError("objective " + std::to_string(i) +
                                  " blocks must cover every stage");
      if (static_cast<int>(
              blocks.objectives[static_cast<std::size_t>(i)][static_cast<std::size_t>(stage)]
                  .size()) != nodes)
        throw PrefixMismatchError("objective " + std::to_string(i) + " blocks at stage " +
                                  std::to_string(stage) + " must cover every node");
      for (const ObjectiveTerm& term :
           blocks.objectives[static_cast<std::size_t>(i)][static_cast<std::size_t>(stage)])
        check_blocks(term.blocks, stage, "objective term");
    }
  }

  MSMOModel model;
  model.tree_ = std::move(tree);
  model.blocks_ = std::move(blocks);
  model.m_ = m;
  model.senses_ = std::move(senses);
  model.scoring_ = scoring;
  model.nonnegative_ = nonnegative;

  model.column_offset_.resize(static_cast<std::size_t>(T));
  int next = 0;
  for (int stage = 0; stage < T; ++stage) {
    const int nodes = model.tree_.node_count(stage);
    model.column_offset_[static_cast<std::size_t>(stage)].resize(static_cast<std::size_t>(nodes));
    for (int node = 0; node < nodes; ++node) {
      model.column_offset_[static_cast<std::size_t>(stage)][static_cast<std::size_t>(node)] = next;
      next += model.blocks_.var_widths[static_cast<std::size_t>(stage)];
    }
  }
  model.total_columns_ = next;

  if (scoring == ScoringMode::TerminalPath) {
    const int terminal = T - 1;
    for (int p = 0; p < model.tree_.path_count(); ++p)
      for (int i = 0; i < m; ++i)
        model.meta_refs_.push_back(
            MSMOModel::MetaRef{i, terminal, p, p, model.tree_.node_label(terminal, p)});
  } else {
    for (int stage = 0; stage < T; ++stage)
      for (int node = 0; node < model.tree_.node_count(stage); ++node)
        for (int i = 0; i < m; ++i)
          model.meta_refs_.push_back(MSMOModel::MetaRef{i, stage, node,
                                                        stage == T - 1 ? node : -1,
                                                        model.tree_.node_label(stage, node)});
  }
  return model;
}

DimensionCounts count_dimensions(const MSMOModel& model) {
  DimensionCounts counts;
  counts.objective_count =
      static_cast<long>(model.objective_count()) * static_cast<long>(model.tree().node_count());
  for (int stage = 0; stage < model.stage_count(); ++stage)
    for (int node = 0; node < model.tree().node_count(stage); ++node)
      counts.constraint_count += static_cast<long>(
          model.blocks().rows[static_cast<std::size_t>(stage)][static_cast<std::size_t>(node)].size());
  return counts;
}

namespace {

void require_coverage(const MSMOModel& model, const MetaDecision& d) {
  const int T = model.stage_count();
  if (static_cast<int>(d.values.size()) != T)
    throw CoverageError("decision must cover every stage");
  for (int stage = 0; stage < T; ++stage) {
    const int nodes = model.tree().node_count(stage);
    if (static_cast<int>(d.values[static_cast<std::size_t>(stage)].size()) != nodes)
      throw CoverageError("decision must cover every node at stage " + std::to_string(stage));
    for (const auto& v : d.values[static_cast<std::size_t>(stage)]) {
      if (static_cast<int>(v.size()) != model.stage_width(stage))
        throw CoverageError("decision width mismatch at stage " + std::to_string(stage));
      for (double x : v)
        if (!std::isfinite(x)) throw CoverageError("non-finite decision value");
    }
  }
}

}  // namespace

ObjectiveMatrix evaluate(const MSMOModel& model, const MetaDecision& d) {
  require_coverage(model, d);
  const std::vector<double> flat = flatten(model, d);
  const bool terminal = model.scoring() == ScoringMode::TerminalPath;
  const int cols = terminal ? model.tree().path_count() : model.tree().node_count();

  ObjectiveMatrix matrix;
  matrix.rows = model.objective_count();
  matrix.cols = cols;
  matrix.entries.assign(static_cast<std::size_t>(matrix.rows) * static_cast<std::size_t>(cols), 0.0);
  matrix.col_labels.resize(static_cast<std::size_t>(cols));

  int col = 0;
  auto fill = [&](int stage, int node) {
    matrix.col_labels[static_cast<std::size_t>(col)] = model.tree().node_label(stage, node);
    for (int i = 0; i < matrix.rows; ++i) {
      const std::vector<double> row = model.z_row(i, stage, node);
      double value = 0.0;
      for (std::size_t c = 0; c < row.size(); ++c) value += row[c] * flat[c];
      matrix.at(i, col) = value;
    }
    ++col;
  };
  if (terminal) {
    const int stage = model.stage_count() - 1;
    for (int node = 0; node < model.tree().node_count(stage); ++node) fill(stage, node);
  } else {
    for (int stage = 0; stage < model.stage_count(); ++stage)
      for (int node = 0; node < model.tree().node_count(stage); ++node) fill(stage, node);
  }
  return matrix;
}

DominanceResult dominates(const ObjectiveMatrix& a, const ObjectiveMatrix& b,
                          const std::vector<Sense>& senses, double tol) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw ShapeMismatchError("objective matrices are not congruent");
  if (static_cast<int>(senses.size()) != a.rows)
    throw ShapeMismatchError("need one sense per objective row");

  bool a_better = false, b_better = false;
  for (int i = 0; i < a.rows; ++i) {
    const double dir = senses[static_cast<std::size_t>(i)] == Sense::Minimize ? 1.0 : -1.0;
    for (int p = 0; p < a.cols; ++p) {
      const double diff = dir * (a.at(i, p) - b.at(i, p));  // negative = a better
      if (diff < -tol) a_better = true;
      if (diff > tol) b_better = true;
    }
  }
  if (a_better && !b_better) return DominanceResult::Dominates;
  if (b_better && !a_better) return DominanceResult::DominatedBy;
  if (!a_better && !b_better) return DominanceResult::Equal;
  return DominanceResult::Incomparable;
}

MSMOModel prefix_model(const MSMOModel& model, int keep_stages) {
  const int T = model.stage_count();
  if (keep_stages < 2 || keep_stages > T)
    throw RangeError("keep_stages must lie in [2, " + std::to_string(T) + "]");
  if (keep_stages == T) return model;

  const ScenarioTree& tree = model.tree();
  std::vector<std::vector<std::string>> states;
  for (int t = 1; t < keep_stages; ++t) states.push_back(tree.states_at(t));
  std::vector<Transitions> transitions;
  for (int t = 1; t <= keep_stages - 2; ++t) {
    Transitions adj;
    const auto& succ = tree.successors(t);
    for (int s = 0; s < tree.state_count(t); ++s) {
      std::vector<std::string> tos;
      for (int idx : succ[static_cast<std::size_t>(s)]) tos.push_back(tree.state_name(t + 1, idx));
      adj[tree.state_name(t, s)] = std::move(tos);
    }
    transitions.push_back(std::move(adj));
  }
  ScenarioTree truncated = build_tree(keep_stages, std::move(states), transitions, tree.root_state());

  StageBlocks blocks;
  blocks.var_widths.assign(model.blocks().var_widths.begin(),
                           model.blocks().var_widths.begin() + keep_stages);
  if (!model.blocks().var_names.empty())
    blocks.var_names.assign(model.blocks().var_names.begin(),
                            model.blocks().var_names.begin() + keep_stages);
  blocks.rows.assign(model.blocks().rows.begin(), model.blocks().rows.begin() + keep_stages);
  blocks.objectives.resize(static_cast<std::size_t>(model.objective_count()));
  for (int i = 0; i < model.objective_count(); ++i)
    blocks.objectives[static_cast<std::size_t>(i)].assign(
        model.blocks().objectives[static_cast<std::size_t>(i)].begin(),
        model.blocks().objectives[static_cast<std::size_t>(i)].begin() + keep_stages);

  return assemble(std::move(truncated), std::move(blocks), model.objective_count(), model.senses(),
                  model.scoring(), model.nonnegative());
}

MetaDecision prefix_decision(const MetaDecision& d, int keep_stages) {
  if (keep_stages < 1 || keep_stages > static_cast<int>(d.values.size()))
    throw RangeError("keep_stages out of range for decision");
  MetaDecision out;
  out.values.assign(d.values.begin(), d.values.begin() + keep_stages);
  return out;
}

std::vector<double> flatten(const MSMOModel& model, const MetaDecision& d) {
  require_coverage(model, d);
  std::vector<double> flat(static_cast<std::size_t>(model.total_columns()), 0.0);
  for (int stage = 0; stage < model.stage_count(); ++stage)
    for (int node = 0; node < model.tree().node_count(stage); ++node) {
      const auto& v = d.values[static_cast<std::size_t>(stage)][static_cast<std::size_t>(node)];
      const int base = model.column(stage, node, 0);
      std::copy(v.begin(), v.end(), flat.begin() + base);
    }
  return flat;
}

MetaDecision unflatten(const MSMOModel& model, std::span<const double> flat) {
  if (static_cast<int>(flat.size()) < model.total_columns())
    throw CoverageError("flat vector narrower than the model's columns");
  MetaDecision d;
  d.values.resize(static_cast<std::size_t>(model.stage_count()));
  for (int stage = 0; stage < model.stage_count(); ++stage) {
    const int nodes = model.tree().node_count(stage);
    d.values[static_cast<std::size_t>(stage)].resize(static_cast<std::size_t>(nodes));
    for (int node = 0; node < nodes; ++node) {
      const int base = model.column(stage, node, 0);
      const int width = model.stage_width(stage);
      d.values[static_cast<std::size_t>(stage)][static_cast<std::size_t>(node)] =
          std::vector<double>(flat.begin() + base, flat.begin() + base + width);
    }
  }
  return d;
}

bool models_equal(const MSMOModel& a, const MSMOModel& b) {
  return a.tree() == b.tree() && a.blocks() == b.blocks() &&
         a.objective_count() == b.objective_count() && a.senses() == b.senses() &&
         a.scoring() == b.scoring() && a.nonnegative() == b.nonnegative();
}

}  // namespace scenopt
