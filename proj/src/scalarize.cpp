#include "scenopt/scalarize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scenopt/errors.hpp"

namespace scenopt {

namespace {

// Slack cap for the improvement LP; keeps it bounded so a certificate can
// always be read off a finite optimum.
constexpr double kSlackCap = 1e9;

void require_reference(const MSMOModel& model, const ReferencePoint& ref) {
  const std::size_t q = static_cast<std::size_t>(model.meta_objective_count());
  if (ref.goals.size() != q)
    throw CoverageError("reference point carries " + std::to_string(ref.goals.size()) +
                        " goals for " + std::to_string(q) + " meta-objectives");
  if (ref.weights.size() != q)
    throw CoverageError("reference point carries " + std::to_string(ref.weights.size()) +
                        " weights for " + std::to_string(q) + " meta-objectives");
  for (double w : ref.weights)
    if (!(w > 0.0)) throw NonpositiveWeightError("deviation weights must be strictly positive");
  if (!(ref.epsilon > 0.0))
    throw NonpositiveWeightError("augmentation epsilon must be strictly positive");
}

}  // namespace

LPProblem scalarize(const MSMOModel& model, const ReferencePoint& ref) {
  require_reference(model, ref);

  LPProblem lp = model.structural_lp();
  const int n = model.total_columns();
  const int q = model.meta_objective_count();

  std::vector<int> delta_col(static_cast<std::size_t>(q));
  for (int k = 0; k < q; ++k) {
    const auto& mref = model.meta_refs()[static_cast<std::size_t>(k)];
    std::string label = mref.label;
    std::replace(label.begin(), label.end(), '.', '_');
    delta_col[static_cast<std::size_t>(k)] = lp.add_variable(
        "delta_" + std::to_string(mref.objective + 1) + "_" + label, -kInfinity, kInfinity);
  }
  const int phi_col = lp.add_variable("phi", -kInfinity, kInfinity);

  // Goal rows: z - delta = g in the minimisation-normalised frame.
  for (int k = 0; k < q; ++k) {
    const auto& mref = model.meta_refs()[static_cast<std::size_t>(k)];
    const double dir =
        model.senses()[static_cast<std::size_t>(mref.objective)] == Sense::Maximize ? -1.0 : 1.0;
    std::vector<double> coeffs(lp.cost.size(), 0.0);
    const std::vector<double> z = model.z_row(mref.objective, mref.stage, mref.node);
    for (int c = 0; c < n; ++c) coeffs[static_cast<std::size_t>(c)] = dir * z[static_cast<std::size_t>(c)];
    coeffs[static_cast<std::size_t>(delta_col[static_cast<std::size_t>(k)])] = -1.0;
    lp.add_row(std::move(coeffs), Relation::Equal, dir * ref.goals[static_cast<std::size_t>(k)]);
  }
  // Linearisation rows: w * delta - phi <= 0.
  for (int k = 0; k < q; ++k) {
    std::vector<double> coeffs(lp.cost.size(), 0.0);
    coeffs[static_cast<std::size_t>(delta_col[static_cast<std::size_t>(k)])] =
        ref.weights[static_cast<std::size_t>(k)];
    coeffs[static_cast<std::size_t>(phi_col)] = -1.0;
    lp.add_row(std::move(coeffs), Relation::LessEq, 0.0);
  }

  lp.sense = Sense::Minimize;
  std::fill(lp.cost.begin(), lp.cost.end(), 0.0);
  lp.cost[static_cast<std::size_t>(phi_col)] = 1.0;
  for (int k = 0; k < q; ++k)
    lp.cost[static_cast<std::size_t>(delta_col[static_cast<std::size_t>(k)])] =
        ref.epsilon * ref.weights[static_cast<std::size_t>(k)];
  return lp;
}

ScalarizationResult extract(const MSMOModel& model, const LPProblem& lp, const SolveResult& res) {
  if (res.status != SolveResult::Status::Optimal)
    throw NotOptimalError(std::string("cannot extract from a ") + to_string(res.status) + " solve");
  const int n = model.total_columns();
  const int q = model.meta_objective_count();
  if (static_cast<int>(res.point.size()) != n + q + 1 || lp.num_vars() != n + q + 1)
    throw ShapeMismatchError("solve result does not match the scalarised layout");

  ScalarizationResult out;
  out.decision = unflatten(model, res.point);
  out.deviations.assign(res.point.begin() + n, res.point.begin() + n + q);
  out.phi = res.point[static_cast<std::size_t>(n + q)];
  out.psi = res.objective_value;
  out.objective_matrix = evaluate(model, out.decision);
  return out;
}

ParetoCheck verify_pareto(const MSMOModel& model, const MetaDecision& d, double tol) {
  const LPProblem structural = model.structural_lp();
  const std::vector<double> flat = flatten(model, d);
  if (!check_point(structural, flat, 1e-7).empty())
    throw InfeasibleInputError("candidate decision violates the model");

  LPProblem lp = structural;
  const int n = model.total_columns();
  const int q = model.meta_objective_count();
  const ObjectiveMatrix base = evaluate(model, d);

  std::vector<int> slack_col(static_cast<std::size_t>(q));
  for (int k = 0; k < q; ++k)
    slack_col[static_cast<std::size_t>(k)] = lp.add_variable("s" + std::to_string(k), 0.0, kSlackCap);

  for (int k = 0; k < q; ++k) {
    const auto& mref = model.meta_refs()[static_cast<std::size_t>(k)];
    const double dir =
        model.senses()[static_cast<std::size_t>(mref.objective)] == Sense::Maximize ? -1.0 : 1.0;
    const std::vector<double> z = model.z_row(mref.objective, mref.stage, mref.node);
    std::vector<double> coeffs(lp.cost.size(), 0.0);
    for (int c = 0; c < n; ++c) coeffs[static_cast<std::size_t>(c)] = dir * z[static_cast<std::size_t>(c)];
    coeffs[static_cast<std::size_t>(slack_col[static_cast<std::size_t>(k)])] = 1.0;
    const double target = base.at(mref.objective, model.matrix_column(mref));
    lp.add_row(std::move(coeffs), Relation::Equal, dir * target);
  }

  lp.sense = Sense::Maximize;
  std::fill(lp.cost.begin(), lp.cost.end(), 0.0);
  for (int k = 0; k < q; ++k) lp.cost[static_cast<std::size_t>(slack_col[static_cast<std::size_t>(k)])] = 1.0;

  const SolveResult res = solve(lp);
  ParetoCheck check;
  if (res.status != SolveResult::Status::Optimal)
    throw InfeasibleInputError(std::string("improvement LP ended ") + to_string(res.status));
  check.improvement = res.objective_value;
  check.pareto = check.improvement <= tol;
  if (!check.pareto) {
    check.dominating = unflatten(model, res.point);
    check.dominating_matrix = evaluate(model, *check.dominating);
  }
  return check;
}

}  // namespace scenopt
