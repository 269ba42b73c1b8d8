#pragma once

#include <string>
#include <vector>

#include "scenopt/horizon.hpp"
#include "scenopt/model.hpp"
#include "scenopt/portfolio.hpp"
#include "scenopt/scalarize.hpp"

namespace scenopt {

/// Per-node decision summary of a solved case-study model: holdings per
/// option after each rebalance, withdrawals per stage and the end-of-horizon
/// worth per path. Values rounded to the nearest 100 for display.
std::string solution_table(const PortfolioInstance& inst, const MSMOModel& model,
                           const MetaDecision& decision, const std::string& label);

/// Long-format CSV of an objective matrix: objective,path,value with values
/// in currency units, meta-objective order.
std::string objectives_csv(const MSMOModel& model, const ObjectiveMatrix& matrix);

/// CSV of goals, achieved values and deviations per meta-objective.
/// Deviations are in the minimisation-normalised frame (positive = missed).
std::string deviations_csv(const MSMOModel& model, const ReferencePoint& ref,
                           const ScalarizationResult& result);

/// Long-format attainment data: solution_label,path,objective,value — one
/// row per (solution, path, objective), sorted deterministically.
/// Throws ShapeMismatchError when the matrices are not congruent.
std::string export_attainment(const std::vector<ObjectiveMatrix>& matrices,
                              const std::vector<std::string>& labels);

/// Per-path dominance verdicts between two solutions plus the overall
/// verdict over every meta-objective entry.
std::string dominance_report(const ObjectiveMatrix& a, const ObjectiveMatrix& b,
                             const std::string& label_a, const std::string& label_b,
                             const std::vector<Sense>& senses);

/// Side-by-side profit table and robustness verdicts.
std::string robustness_table(const std::vector<RobustnessReport>& reports,
                             const std::vector<std::string>& labels);

/// Per-scenario residual statuses and the first-stage diagnostics of a
/// moving-horizon run.
std::string horizon_report(const HorizonRun& run);

}  // namespace scenopt
