#pragma once

#include <span>
#include <string>
#include <vector>

#include "scenopt/lp.hpp"
#include "scenopt/scenario_tree.hpp"

namespace scenopt {

/// One structural constraint instantiated at a tree node. `blocks[t]` holds
/// the coefficients applied to the stage-t decision on the node's prefix,
/// for t = 0 .. node stage.
struct ConstraintRow {
  std::vector<std::vector<double>> blocks;
  Relation rel = Relation::LessEq;
  double rhs = 0.0;

  bool operator==(const ConstraintRow&) const = default;
};

/// The objective contribution scored at a tree node, with the same block
/// layout as ConstraintRow. The value of objective i on a path is the sum
/// of its node terms along that path.
struct ObjectiveTerm {
  std::vector<std::vector<double>> blocks;

  bool operator==(const ObjectiveTerm&) const = default;
};

/// Per-stage decision widths plus the constraint and objective coefficient
/// blocks of a multi-stage block LP, keyed by the companion tree's node
/// enumeration.
struct StageBlocks {
  std::vector<int> var_widths;                             // n_t per stage
  std::vector<std::vector<std::string>> var_names;         // optional local names per stage
  std::vector<std::vector<std::vector<ConstraintRow>>> rows;       // [stage][node][r]
  std::vector<std::vector<std::vector<ObjectiveTerm>>> objectives; // [objective][stage][node]

  bool operator==(const StageBlocks&) const = default;
};

/// Whether meta-objectives are scored once per terminal path (cumulative
/// value over the whole horizon) or at every tree node (cumulative value up
/// to that node, the general framework's placement).
enum class ScoringMode { TerminalPath, PerStageCumulative };

/// A decision tree of values: one vector of stage-local decisions per tree
/// node. values[stage][node] has the stage's width.
struct MetaDecision {
  std::vector<std::vector<std::vector<double>>> values;

  bool operator==(const MetaDecision&) const = default;
};

/// Meta-objective values, one row per objective and one column per scored
/// unit (terminal path, or node in per-stage scoring).
struct ObjectiveMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> entries;  // row-major
  std::vector<std::string> col_labels;

  double at(int i, int p) const { return entries.at(static_cast<std::size_t>(i * cols + p)); }
  double& at(int i, int p) { return entries.at(static_cast<std::size_t>(i * cols + p)); }

  bool operator==(const ObjectiveMatrix&) const = default;
};

enum class DominanceResult { Dominates, DominatedBy, Incomparable, Equal };

const char* to_string(DominanceResult r);

/// Immutable multi-stage multi-scenario multi-objective linear model.
/// evaluate / dominance / scalarization over it are pure.
class MSMOModel {
 public:
  const ScenarioTree& tree() const { return tree_; }
  const StageBlocks& blocks() const { return blocks_; }
  int objective_count() const { return m_; }
  const std::vector<Sense>& senses() const { return senses_; }
  ScoringMode scoring() const { return scoring_; }
  bool nonnegative() const { return nonnegative_; }

  int stage_count() const { return tree_.stage_count(); }
  int stage_width(int stage) const { return blocks_.var_widths.at(static_cast<std::size_t>(stage)); }

  /// Flat column layout: stage-major, node-minor, local index last.
  int total_columns() const { return total_columns_; }
  int column(int stage, int node, int j) const;
  std::string column_name(int col) const;

  /// Scored meta-objective units in deterministic order (path- or
  /// node-major, objective-minor).
  struct MetaRef {
    int objective = 0;
    int stage = 0;
    int node = 0;
    int path = -1;  // enumeration index when the node is terminal
    std::string label;
  };
  const std::vector<MetaRef>& meta_refs() const { return meta_refs_; }
  int meta_objective_count() const { return static_cast<int>(meta_refs_.size()); }

  /// Column of evaluate()'s matrix that a meta-objective is scored in.
  int matrix_column(const MetaRef& ref) const;

  /// Flat-column coefficient row of the cumulative objective value at a
  /// node (the telescoping accumulation along its ancestry).
  std::vector<double> z_row(int objective, int stage, int node) const;

  /// Structural rows as a feasibility LP (zero objective), rows in
  /// stage-major instantiation order.
  LPProblem structural_lp() const;

  bool operator==(const MSMOModel&) const = default;

 private:
  friend MSMOModel assemble(ScenarioTree, StageBlocks, int, std::vector<Sense>, ScoringMode, bool);

  ScenarioTree tree_;
  StageBlocks blocks_;
  int m_ = 0;
  std::vector<Sense> senses_;
  ScoringMode scoring_ = ScoringMode::TerminalPath;
  bool nonnegative_ = true;

  int total_columns_ = 0;
  std::vector<std::vector<int>> column_offset_;  // [stage][node]
  std::vector<MetaRef> meta_refs_;
};

/// Validates blocks against the tree and builds the model with its
/// deterministic variable indexing. Throws PrefixMismatchError,
/// WidthMismatchError or MalformedProblemError.
MSMOModel assemble(ScenarioTree tree, StageBlocks blocks, int m, std::vector<Sense> senses,
                   ScoringMode scoring = ScoringMode::TerminalPath, bool nonnegative = true);

struct DimensionCounts {
  long objective_count = 0;   // general-framework count: m x tree nodes
  long constraint_count = 0;  // instantiated structural rows
};

DimensionCounts count_dimensions(const MSMOModel& model);

/// Meta-objective values of a decision; entry (i, p) is the accumulation of
/// the objective-i node terms along path/ancestry p. Throws CoverageError.
ObjectiveMatrix evaluate(const MSMOModel& model, const MetaDecision& d);

/// Pareto comparison over all (objective, column) entries, honouring the
/// per-objective sense. tol = 0 gives exact comparison.
DominanceResult dominates(const ObjectiveMatrix& a, const ObjectiveMatrix& b,
                          const std::vector<Sense>& senses, double tol = 0.0);

/// Truncation to the first keep_stages stages (Theorem-3.1 contract: the
/// prefix of any feasible decision stays feasible). Throws RangeError.
MSMOModel prefix_model(const MSMOModel& model, int keep_stages);

/// The prefix of a decision, shaped for prefix_model(model, keep_stages).
MetaDecision prefix_decision(const MetaDecision& d, int keep_stages);

std::vector<double> flatten(const MSMOModel& model, const MetaDecision& d);
MetaDecision unflatten(const MSMOModel& model, std::span<const double> flat);

/// Coefficient-exact structural equality (trees, widths, rows, objectives,
/// senses and scoring).
bool models_equal(const MSMOModel& a, const MSMOModel& b);

}  // namespace scenopt
