#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scenopt/model.hpp"
#include "scenopt/scalarize.hpp"

namespace scenopt {

/// Outcome of one two-stage moving-horizon run: the first two-stage solve,
/// the fixed initial decision, one residual solve per first-stage scenario
/// and (when every residual solved) the composed decision tree. Per the
/// strategy, the first model's stage-1 decision is kept for diagnostics but
/// each stage-1 value in the composite comes from the matching residual.
struct HorizonRun {
  ScalarizationResult first_stage;
  std::vector<double> fixed_x0;

  struct ResidualOutcome {
    std::string scenario;
    SolveResult::Status status = SolveResult::Status::Infeasible;
    std::optional<ScalarizationResult> result;
  };
  std::vector<ResidualOutcome> residuals;  // in stage-1 state order

  std::optional<MetaDecision> composite;  // present iff every residual solved
};

/// The second two-stage model once scenario k1 has realised: stage-1/2 rows
/// of the matching prefixes with the fixed initial decision folded into the
/// right-hand sides, and objective terms restricted to the stage-1/2
/// variables. Throws UnknownStateError for an undeclared scenario and
/// RangeError unless the model has exactly three stages.
MSMOModel residual_model(const MSMOModel& model, std::span<const double> x0_star,
                         const std::string& k1);

/// Runs the full strategy on a three-stage model: solve the truncated
/// two-stage model, fix the initial decision, then solve the residual model
/// of every first-stage scenario. Infeasible residuals are recorded as
/// findings, not errors. residual_refs are indexed by stage-1 state order.
/// Throws FirstStageInfeasibleError when the first two-stage solve fails.
HorizonRun run_moving_horizon(const MSMOModel& model, const ReferencePoint& first_ref,
                              const std::vector<ReferencePoint>& residual_refs,
                              const SimplexOptions& opts = {});

/// Moving-horizon feasibility of a candidate decision: its stage-0/1 prefix
/// must satisfy the first two-stage model and, for every first-stage
/// scenario, the (stage-1, stage-2) pair must satisfy the residual model
/// with the candidate's own initial decision fixed.
bool check_mh_feasibility(const MSMOModel& model, const MetaDecision& d, double tol = 1e-7);

}  // namespace scenopt
