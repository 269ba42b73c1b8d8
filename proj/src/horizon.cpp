#include "scenopt/horizon.hpp"

#include <string>
#include <utility>

#include "scenopt/errors.hpp"

namespace scenopt {

namespace {

double dot_block(const std::vector<double>& block, std::span<const double> x) {
  double v = 0.0;
  for (std::size_t j = 0; j < block.size(); ++j) v += block[j] * x[j];
  return v;
}

}  // namespace

MSMOModel residual_model(const MSMOModel& model, std::span<const double> x0_star,
                         const std::string& k1) {
  if (model.stage_count() != 3)
    throw RangeError("residual models are defined for three-stage windows");
  if (static_cast<int>(x0_star.size()) != model.stage_width(0))
    throw WidthMismatchError("fixed initial decision has the wrong width");
  const ScenarioTree& tree = model.tree();
  const int k1_state = tree.state_index(1, k1);  // UnknownStateError if absent
  const int k1_node = k1_state;                  // stage-1 nodes follow state order

  const auto& node1 = tree.nodes(1)[static_cast<std::size_t>(k1_node)];
  std::vector<std::string> next_states;
  for (int child : node1.children)
    next_states.push_back(tree.state_name(2, tree.nodes(2)[static_cast<std::size_t>(child)].prefix[1]));

  ScenarioTree residual_tree = build_tree(2, {next_states}, {}, k1);

  StageBlocks blocks;
  blocks.var_widths = {model.stage_width(1), model.stage_width(2)};
  if (!model.blocks().var_names.empty())
    blocks.var_names = {model.blocks().var_names[1], model.blocks().var_names[2]};

  blocks.rows.resize(2);
  blocks.rows[0].resize(1);
  for (const ConstraintRow& row : model.blocks().rows[1][static_cast<std::size_t>(k1_node)]) {
    ConstraintRow r;
    r.blocks = {row.blocks[1]};
    r.rel = row.rel;
    r.rhs = row.rhs - dot_block(row.blocks[0], x0_star);
    blocks.rows[0][0].push_back(std::move(r));
  }
  blocks.rows[1].resize(node1.children.size());
  for (std::size_t c = 0; c < node1.children.size(); ++c) {
    const int child = node1.children[c];
    for (const ConstraintRow& row : model.blocks().rows[2][static_cast<std::size_t>(child)]) {
      ConstraintRow r;
      r.blocks = {row.blocks[1], row.blocks[2]};
      r.rel = row.rel;
      r.rhs = row.rhs - dot_block(row.blocks[0], x0_star);
      blocks.rows[1][c].push_back(std::move(r));
    }
  }

  blocks.objectives.resize(static_cast<std::size_t>(model.objective_count()));
  for (int i = 0; i < model.objective_count(); ++i) {
    auto& obj = blocks.objectives[static_cast<std::size_t>(i)];
    obj.resize(2);
    const ObjectiveTerm& t1 =
        model.blocks().objectives[static_cast<std::size_t>(i)][1][static_cast<std::size_t>(k1_node)];
    obj[0].push_back(ObjectiveTerm{{t1.blocks[1]}});
    obj[1].resize(node1.children.size());
    for (std::size_t c = 0; c < node1.children.size(); ++c) {
      const int child = node1.children[c];
      const ObjectiveTerm& t2 =
          model.blocks().objectives[static_cast<std::size_t>(i)][2][static_cast<std::size_t>(child)];
      obj[1][c] = ObjectiveTerm{{t2.blocks[1], t2.blocks[2]}};
    }
  }

  return assemble(std::move(residual_tree), std::move(blocks), model.objective_count(),
                  model.senses(), model.scoring(), model.nonnegative());
}

HorizonRun run_moving_horizon(const MSMOModel& model, const ReferencePoint& first_ref,
                              const std::vector<ReferencePoint>& residual_refs,
                              const SimplexOptions& opts) {
  if (model.stage_count() != 3)
    throw RangeError("the moving-horizon strategy runs on three-stage models");
  const ScenarioTree& tree = model.tree();
  const int p1 = tree.state_count(1);
  if (static_cast<int>(residual_refs.size()) != p1)
    throw CoverageError("need one residual reference point per first-stage scenario");

  HorizonRun run;
  const MSMOModel first = prefix_model(model, 2);
  const LPProblem first_lp = scalarize(first, first_ref);
  const SolveResult first_res = solve(first_lp, opts);
  if (first_res.status != SolveResult::Status::Optimal)
    throw FirstStageInfeasibleError(std::string("first two-stage solve ended ") +
                                    to_string(first_res.status));
  run.first_stage = extract(first, first_lp, first_res);
  run.fixed_x0 = run.first_stage.decision.values[0][0];

  bool all_optimal = true;
  for (int s = 0; s < p1; ++s) {
    HorizonRun::ResidualOutcome outcome;
    outcome.scenario = tree.state_name(1, s);
    const MSMOModel residual = residual_model(model, run.fixed_x0, outcome.scenario);
    const LPProblem lp = scalarize(residual, residual_refs[static_cast<std::size_t>(s)]);
    const SolveResult res = solve(lp, opts);
    outcome.status = res.status;
    if (res.status == SolveResult::Status::Optimal)
      outcome.result = extract(residual, lp, res);
    else
      all_optimal = false;
    run.residuals.push_back(std::move(outcome));
  }

  if (all_optimal) {
    MetaDecision composite;
    composite.values.resize(3);
    composite.values[0].push_back(run.fixed_x0);
    composite.values[1].resize(static_cast<std::size_t>(tree.node_count(1)));
    composite.values[2].resize(static_cast<std::size_t>(tree.node_count(2)));
    for (int s = 0; s < p1; ++s) {
      const ScalarizationResult& res = *run.residuals[static_cast<std::size_t>(s)].result;
      composite.values[1][static_cast<std::size_t>(s)] = res.decision.values[0][0];
      const auto& children = tree.nodes(1)[static_cast<std::size_t>(s)].children;
      for (std::size_t c = 0; c < children.size(); ++c)
        composite.values[2][static_cast<std::size_t>(children[c])] = res.decision.values[1][c];
    }
    run.composite = std::move(composite);
  }
  return run;
}

bool check_mh_feasibility(const MSMOModel& model, const MetaDecision& d, double tol) {
  if (model.stage_count() != 3)
    throw RangeError("moving-horizon feasibility is defined for three-stage models");

  const MSMOModel first = prefix_model(model, 2);
  const MetaDecision prefix = prefix_decision(d, 2);
  if (!check_point(first.structural_lp(), flatten(first, prefix), tol).empty()) return false;

  const ScenarioTree& tree = model.tree();
  const std::vector<double>& x0 = d.values[0][0];
  for (int s = 0; s < tree.state_count(1); ++s) {
    const MSMOModel residual = residual_model(model, x0, tree.state_name(1, s));
    MetaDecision rd;
    rd.values.resize(2);
    rd.values[0].push_back(d.values[1][static_cast<std::size_t>(s)]);
    const auto& children = tree.nodes(1)[static_cast<std::size_t>(s)].children;
    for (int child : children) rd.values[1].push_back(d.values[2][static_cast<std::size_t>(child)]);
    if (!check_point(residual.structural_lp(), flatten(residual, rd), tol).empty()) return false;
  }
  return true;
}

}  // namespace scenopt
