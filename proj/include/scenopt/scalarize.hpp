#pragma once

#include <optional>
#include <vector>

#include "scenopt/lp.hpp"
#include "scenopt/model.hpp"

namespace scenopt {

/// Aspiration levels and deviation weights, one per meta-objective in the
/// model's meta_refs() order. Goals are in the objectives' own units and
/// senses; the scalarizer normalises internally.
struct ReferencePoint {
  std::vector<double> goals;
  std::vector<double> weights;
  double epsilon = 1e-4;
};

/// Decision, deviations and achievement scalars recovered from a solved
/// scalarisation. Deviations are in the minimisation-normalised frame, so a
/// positive deviation always means the goal was missed.
struct ScalarizationResult {
  MetaDecision decision;
  std::vector<double> deviations;
  double phi = 0.0;  // max weighted deviation
  double psi = 0.0;  // phi + epsilon * sum of weighted deviations
  ObjectiveMatrix objective_matrix;
};

/// Builds the augmented minimax goal LP: model columns plus one free
/// deviation per meta-objective plus a free max-deviation variable; rows are
/// the structural rows, one goal equality per meta-objective and one
/// linearisation row per meta-objective. Maximised objectives (and their
/// goals) are negated first, so positive deviations mean underachievement.
///
/// Throws CoverageError when the reference point does not cover the model's
/// meta-objectives and NonpositiveWeightError for invalid weights/epsilon.
LPProblem scalarize(const MSMOModel& model, const ReferencePoint& ref);

/// Recovers the meta-decision and deviation variables from an optimal solve
/// of scalarize(model, ref). Throws NotOptimalError otherwise.
ScalarizationResult extract(const MSMOModel& model, const LPProblem& lp, const SolveResult& res);

/// Outcome of the Pareto improvement check. When the decision is not Pareto
/// optimal, `dominating` holds a feasible decision that is entrywise no
/// worse and strictly better somewhere.
struct ParetoCheck {
  bool pareto = false;
  double improvement = 0.0;  // optimal slack sum of the improvement LP
  std::optional<MetaDecision> dominating;
  std::optional<ObjectiveMatrix> dominating_matrix;
};

/// Solves the improvement LP (maximise total slack subject to being
/// entrywise no worse than d). Throws InfeasibleInputError when d violates
/// the model.
ParetoCheck verify_pareto(const MSMOModel& model, const MetaDecision& d, double tol = 1e-6);

}  // namespace scenopt
