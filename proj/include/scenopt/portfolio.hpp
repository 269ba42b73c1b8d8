#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scenopt/model.hpp"
#include "scenopt/money.hpp"
#include "scenopt/scalarize.hpp"

namespace scenopt {

/// The bundled sequential-investment case study: growth and transfer-loss
/// tables per economic state, per-stage withdrawal floors and the staged
/// aspiration levels. Monetary fields are cents; goals are in millions.
/// LP coefficients are built in millions for conditioning.
struct PortfolioInstance {
  std::vector<std::string> options;
  std::vector<std::string> states;
  std::vector<std::vector<double>> growth;      // [option][state], fraction
  std::vector<std::vector<std::vector<double>>> penalties;  // [state][from][to..withdraw], fraction
  std::vector<Money> initial_funds;             // per option
  Money initial_capital = 0;
  Money min_withdrawal = 0;
  std::optional<Money> max_withdrawal;
  bool enforce_max_withdrawal = false;
  std::vector<std::map<std::string, double>> fund_goals;        // per stage, state -> millions
  std::vector<std::map<std::string, double>> withdrawal_goals;  // per stage, state -> millions
  std::string root_state;
  ScenarioTree tree;  // three-stage tree rooted at root_state

  int option_count() const { return static_cast<int>(options.size()); }
  int state_index(const std::string& name) const;

  /// Throws InvalidInstanceError when a table is inconsistent.
  void validate() const;

  bool operator==(const PortfolioInstance&) const = default;
};

/// The case study exactly as published: five options, five states, the
/// transition/growth/penalty tables, a 5.0M endowment split evenly, 250k
/// withdrawal floors and the staged goal table.
PortfolioInstance default_instance();

/// Three-stage block model: transfer variables at stages 0/1, withdraw/hold
/// variables at stage 2, funds-balance equalities and withdrawal floors,
/// and the two maximised terminal-path objectives (remaining funds,
/// cumulative withdrawals).
MSMOModel build_three_stage(const PortfolioInstance& inst);

/// Two-stage counterpart over the same stage-0/1 blocks; coefficient-exact
/// with prefix_model(build_three_stage(inst), 2).
MSMOModel build_two_stage(const PortfolioInstance& inst);

/// Default reference points derived from the staged goal table. Fund goals
/// map to the terminal state's level; withdrawal goals accumulate along the
/// path. Weights are 1 and epsilon is 1e-4 unless overridden later.
ReferencePoint three_stage_reference(const PortfolioInstance& inst, const MSMOModel& model);
ReferencePoint two_stage_reference(const PortfolioInstance& inst, const MSMOModel& model);

/// Residual-model reference points per first-stage state, with the sunk
/// stage-0 withdrawal goal excluded.
std::vector<ReferencePoint> residual_references(const PortfolioInstance& inst);

/// profit = remained + withdrawals - capital, exact in cents.
Money profit(Money remained, Money withdrawals, Money initial_capital);

struct RobustnessReport {
  struct Row {
    std::string path;
    Money remained = 0;
    Money withdrawal = 0;
    Money profit = 0;
  };
  std::vector<Row> rows;
  Money min_acceptable_profit = 0;
  bool robust = false;
  int worst_path = 0;  // index into rows

  bool operator==(const RobustnessReport&) const = default;
};

/// Per-path profit from a (remained-funds, cumulative-withdrawals) objective
/// matrix in millions; a solution is robust when every path clears the
/// minimum acceptable profit.
RobustnessReport robustness_report(const ObjectiveMatrix& matrix, Money min_acceptable_profit,
                                   Money initial_capital);

}  // namespace scenopt
