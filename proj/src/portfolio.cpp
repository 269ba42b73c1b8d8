#include "scenopt/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scenopt/errors.hpp"

namespace scenopt {

int PortfolioInstance::state_index(const std::string& name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) throw UnknownStateError("unknown state '" + name + "'");
  return static_cast<int>(it - states.begin());
}

void PortfolioInstance::validate() const {
  const std::size_t n = options.size();
  const std::size_t s = states.size();
  if (n == 0) throw InvalidInstanceError("no investment options");
  if (s == 0) throw InvalidInstanceError("no states");
  if (growth.size() != n) throw InvalidInstanceError("growth table must cover every option");
  for (const auto& row : growth) {
    if (row.size() != s) throw InvalidInstanceError("growth row must cover every state");
    for (double g : row)
      if (!(g > -1.0) || !std::isfinite(g))
        throw InvalidInstanceError("growth fractions must exceed -1");
  }
  if (penalties.size() != s) throw InvalidInstanceError("need one penalty table per state");
  for (const auto& table : penalties) {
    if (table.size() != n) throw InvalidInstanceError("penalty table must cover every option");
    for (std::size_t i = 0; i < n; ++i) {
      if (table[i].size() != n + 1)
        throw InvalidInstanceError("penalty rows need transfer and withdrawal columns");
      for (double p : table[i])
        if (!(p >= 0.0 && p < 1.0))
          throw InvalidInstanceError("penalty fractions must lie in [0, 1)");
      if (table[i][i] != 0.0) throw InvalidInstanceError("diagonal penalties must be zero");
    }
  }
  if (initial_funds.size() != n)
    throw InvalidInstanceError("initial funds must cover every option");
  const Money total = std::accumulate(initial_funds.begin(), initial_funds.end(), Money{0});
  if (total != initial_capital)
    throw InvalidInstanceError("initial funds must sum to the declared capital");
  if (min_withdrawal < 0) throw InvalidInstanceError("negative withdrawal floor");
  if (max_withdrawal && *max_withdrawal < min_withdrawal)
    throw InvalidInstanceError("withdrawal cap below the floor");
  if (tree.stage_count() != 3) throw InvalidInstanceError("the case study uses three stages");
  if (fund_goals.size() != 3 || withdrawal_goals.size() != 3)
    throw InvalidInstanceError("goals must cover stages 0..2");
  auto need_goal = [&](const std::map<std::string, double>& goals, int stage,
                       const std::string& state) {
    if (!goals.count(state))
      throw InvalidInstanceError("missing goal for state " + state + " at stage " +
                                 std::to_string(stage));
  };
  need_goal(fund_goals[0], 0, root_state);
  need_goal(withdrawal_goals[0], 0, root_state);
  for (int t = 1; t <= 2; ++t)
    for (const auto& st : tree.states_at(t)) {
      need_goal(fund_goals[static_cast<std::size_t>(t)], t, st);
      need_goal(withdrawal_goals[static_cast<std::size_t>(t)], t, st);
    }
}

PortfolioInstance default_instance() {
  PortfolioInstance inst;
  inst.options = {"I1", "I2", "I3", "I4", "I5"};
  inst.states = {"S1", "S2", "S3", "S4", "S5"};

  const double growth_pct[5][5] = {
      {-20, 4, 16, 20, 50},
      {-2, 8, 11.5, 20, 30},
      {8, 8.5, 9, 9.5, 10},
      {4, 7, 12, 16, 20},
      {-15, 6, 15, 20, 35},
  };
  inst.growth.assign(5, std::vector<double>(5));
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k) inst.growth[i][k] = growth_pct[i][k] / 100.0;

  const double penalty_pct[5][5][6] = {
      {{0, 2.5, 3, 3, 2, 3},
       {0.05, 0, 1, 0.1, 0.1, 0.3},
       {0.01, 0.1, 0, 0.01, 0.01, 0.1},
       {0.01, 0.01, 0.8, 0, 0.01, 0.2},
       {0.1, 2.5, 3, 3, 0, 2.5}},
      {{0, 1, 1.2, 1.0, 0.7, 2},
       {0.5, 0, 1.0, 0.5, 0.3, 0.4},
       {0.7, 0.2, 0, 0.01, 0.2, 0.3},
       {0.5, 1, 1.5, 0, 0.1, 0.4},
       {0.2, 1, 1.5, 0.1, 0, 1.5}},
      {{0, 0.4, 0.5, 0.3, 1.0, 1.0},
       {1.1, 0, 0.2, 0.01, 1.1, 1.2},
       {1.2, 1, 0, 0.3, 1.0, 2},
       {1.1, 1.5, 0.7, 0, 1.0, 2},
       {0.8, 0.3, 0.3, 0.2, 0, 0.8}},
      {{0, 0.01, 0.01, 0.01, 0.5, 0.1},
       {2, 0, 0.1, 0.1, 2, 1.5},
       {3, 2.5, 0, 0.7, 3, 2.5},
       {3, 2, 0.1, 0, 3, 2.5},
       {5, 0.01, 0.01, 0.01, 0, 0.1}},
      {{0, 0.01, 0.01, 0.01, 1.5, 0.2},
       {1.5, 0, 0.05, 0.1, 2.5, 1.5},
       {3, 2.5, 0, 1, 3, 2.5},
       {2.5, 2, 0.1, 0, 3, 2.5},
       {0.01, 0.01, 0.01, 0.01, 0, 0.1}},
  };
  inst.penalties.assign(5, std::vector<std::vector<double>>(5, std::vector<double>(6)));
  for (int k = 0; k < 5; ++k)
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 6; ++j) inst.penalties[k][i][j] = penalty_pct[k][i][j] / 100.0;

  inst.initial_funds.assign(5, money::from_units(1'000'000));
  inst.initial_capital = money::from_units(5'000'000);
  inst.min_withdrawal = money::from_units(250'000);
  inst.max_withdrawal = money::from_units(1'500'000);
  inst.enforce_max_withdrawal = false;

  inst.fund_goals = {
      {{"S3", 5.5}},
      {{"S2", 6.5}, {"S3", 7.0}, {"S4", 7.5}},
      {{"S1", 7.0}, {"S2", 7.5}, {"S3", 8.0}, {"S4", 9.0}, {"S5", 11.0}},
  };
  inst.withdrawal_goals = {
      {{"S3", 0.75}},
      {{"S2", 0.5}, {"S3", 0.75}, {"S4", 1.0}},
      {{"S1", 0.5}, {"S2", 0.5}, {"S3", 0.75}, {"S4", 1.0}, {"S5", 1.5}},
  };

  inst.root_state = "S3";
  const Transitions adjacency = {
      {"S1", {"S1", "S2"}}, {"S2", {"S1", "S2", "S3"}}, {"S3", {"S2", "S3", "S4"}},
      {"S4", {"S3", "S4", "S5"}}, {"S5", {"S4", "S5"}},
  };
  Transitions stage1;
  for (const auto& st : adjacency.at("S3")) stage1[st] = adjacency.at(st);
  inst.tree = build_tree(3, {adjacency.at("S3"), {"S1", "S2", "S3", "S4", "S5"}}, {stage1}, "S3");
  return inst;
}

namespace {

// Stage-local variable layouts. Rebalancing stages carry one transfer
// variable per (from, to) pair plus a withdrawal per option; the terminal
// stage only withdraws or holds.
int transfer_width(int n) { return n * (n + 1); }
int transfer_index(int n, int from, int to) { return from * (n + 1) + to; }
int withdraw_index(int n, int from) { return from * (n + 1) + n; }
int terminal_width(int n) { return 2 * n; }
int terminal_withdraw(int i) { return 2 * i; }
int terminal_hold(int i) { return 2 * i + 1; }

std::vector<std::string> transfer_names(const PortfolioInstance& inst, int stage) {
  const int n = inst.option_count();
  std::vector<std::string> names(static_cast<std::size_t>(transfer_width(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      names[static_cast<std::size_t>(transfer_index(n, i, j))] =
          "x" + std::to_string(stage) + "_" + inst.options[static_cast<std::size_t>(i)] + "_" +
          inst.options[static_cast<std::size_t>(j)];
    names[static_cast<std::size_t>(withdraw_index(n, i))] =
        "x" + std::to_string(stage) + "_" + inst.options[static_cast<std::size_t>(i)] + "_W";
  }
  return names;
}

std::vector<std::string> terminal_names(const PortfolioInstance& inst, int stage) {
  const int n = inst.option_count();
  std::vector<std::string> names(static_cast<std::size_t>(terminal_width(n)));
  for (int i = 0; i < n; ++i) {
    names[static_cast<std::size_t>(terminal_withdraw(i))] =
        "x" + std::to_string(stage) + "_" + inst.options[static_cast<std::size_t>(i)] + "_W";
    names[static_cast<std::size_t>(terminal_hold(i))] =
        "x" + std::to_string(stage) + "_" + inst.options[static_cast<std::size_t>(i)] + "_H";
  }
  return names;
}

// Stage-0 rows: source balances against the initial funds, in millions,
// using the anchored current state's penalty table.
std::vector<ConstraintRow> stage0_rows(const PortfolioInstance& inst) {
  const int n = inst.option_count();
  const auto& pen = inst.penalties[static_cast<std::size_t>(inst.state_index(inst.root_state))];
  std::vector<ConstraintRow> rows;
  for (int i = 0; i < n; ++i) {
    ConstraintRow row;
    row.blocks = {std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0)};
    for (int j = 0; j <= n; ++j)
      row.blocks[0][static_cast<std::size_t>(i * (n + 1) + j)] =
          1.0 + pen[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    row.rel = Relation::Equal;
    row.rhs = money::to_millions(inst.initial_funds[static_cast<std::size_t>(i)]);
    rows.push_back(std::move(row));
  }
  ConstraintRow floor;
  floor.blocks = {std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0)};
  for (int i = 0; i < n; ++i) floor.blocks[0][static_cast<std::size_t>(withdraw_index(n, i))] = 1.0;
  floor.rel = Relation::GreaterEq;
  floor.rhs = money::to_millions(inst.min_withdrawal);
  rows.push_back(std::move(floor));
  if (inst.enforce_max_withdrawal && inst.max_withdrawal) {
    ConstraintRow cap;
    cap.blocks = {std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0)};
    for (int i = 0; i < n; ++i) cap.blocks[0][static_cast<std::size_t>(withdraw_index(n, i))] = 1.0;
    cap.rel = Relation::LessEq;
    cap.rhs = money::to_millions(*inst.max_withdrawal);
    rows.push_back(std::move(cap));
  }
  return rows;
}

// Stage-1 rows at a realised state: rebalancing balances fed by the grown
// stage-0 positions, plus the withdrawal floor.
std::vector<ConstraintRow> stage1_rows(const PortfolioInstance& inst, int state) {
  const int n = inst.option_count();
  const auto& pen = inst.penalties[static_cast<std::size_t>(state)];
  std::vector<ConstraintRow> rows;
  for (int i = 0; i < n; ++i) {
    ConstraintRow row;
    row.blocks = {std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0),
                  std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0)};
    const double grown = 1.0 + inst.growth[static_cast<std::size_t>(i)][static_cast<std::size_t>(state)];
    for (int j = 0; j < n; ++j)
      row.blocks[0][static_cast<std::size_t>(transfer_index(n, j, i))] = -grown;
    for (int j = 0; j <= n; ++j)
      row.blocks[1][static_cast<std::size_t>(i * (n + 1) + j)] =
          1.0 + pen[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    row.rel = Relation::Equal;
    row.rhs = 0.0;
    rows.push_back(std::move(row));
  }
  ConstraintRow floor;
  floor.blocks = {std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0),
                  std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0)};
  for (int i = 0; i < n; ++i) floor.blocks[1][static_cast<std::size_t>(withdraw_index(n, i))] = 1.0;
  floor.rel = Relation::GreaterEq;
  floor.rhs = money::to_millions(inst.min_withdrawal);
  rows.push_back(std::move(floor));
  if (inst.enforce_max_withdrawal && inst.max_withdrawal) {
    ConstraintRow cap = floor;
    cap.rel = Relation::LessEq;
    cap.rhs = money::to_millions(*inst.max_withdrawal);
    rows.push_back(std::move(cap));
  }
  return rows;
}

// Terminal rows: each option's grown stage-1 position is either withdrawn
// (with the state's withdrawal penalty) or held to the horizon end.
std::vector<ConstraintRow> stage2_rows(const PortfolioInstance& inst, int state) {
  const int n = inst.option_count();
  const auto& pen = inst.penalties[static_cast<std::size_t>(state)];
  std::vector<ConstraintRow> rows;
  for (int i = 0; i < n; ++i) {
    ConstraintRow row;
    row.blocks = {std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0),
                  std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0),
                  std::vector<double>(static_cast<std::size_t>(terminal_width(n)), 0.0)};
    const double grown = 1.0 + inst.growth[static_cast<std::size_t>(i)][static_cast<std::size_t>(state)];
    for (int j = 0; j < n; ++j)
      row.blocks[1][static_cast<std::size_t>(transfer_index(n, j, i))] = -grown;
    row.blocks[2][static_cast<std::size_t>(terminal_withdraw(i))] =
        1.0 + pen[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
    row.blocks[2][static_cast<std::size_t>(terminal_hold(i))] = 1.0;
    row.rel = Relation::Equal;
    row.rhs = 0.0;
    rows.push_back(std::move(row));
  }
  ConstraintRow floor;
  floor.blocks = {std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0),
                  std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0),
                  std::vector<double>(static_cast<std::size_t>(terminal_width(n)), 0.0)};
  for (int i = 0; i < n; ++i) floor.blocks[2][static_cast<std::size_t>(terminal_withdraw(i))] = 1.0;
  floor.rel = Relation::GreaterEq;
  floor.rhs = money::to_millions(inst.min_withdrawal);
  rows.push_back(std::move(floor));
  if (inst.enforce_max_withdrawal && inst.max_withdrawal) {
    ConstraintRow cap = floor;
    cap.rel = Relation::LessEq;
    cap.rhs = money::to_millions(*inst.max_withdrawal);
    rows.push_back(std::move(cap));
  }
  return rows;
}

// Objective node terms for the telescoping funds score: each stage replaces
// the previous stage's invested total with its own, so the cumulative value
// at any node is the funds still invested right after that node's decision.
ObjectiveTerm funds_term(const PortfolioInstance& inst, int stage, bool terminal_stage) {
  const int n = inst.option_count();
  ObjectiveTerm term;
  if (stage == 0) {
    term.blocks = {std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0)};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        term.blocks[0][static_cast<std::size_t>(transfer_index(n, i, j))] = 1.0;
  } else if (stage == 1) {
    term.blocks = {std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0),
                   std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0)};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        term.blocks[0][static_cast<std::size_t>(transfer_index(n, i, j))] = -1.0;
        term.blocks[1][static_cast<std::size_t>(transfer_index(n, i, j))] = 1.0;
      }
  } else {
    term.blocks = {std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0),
                   std::vector<double>(static_cast<std::size_t>(transfer_width(n)), 0.0),
                   std::vector<double>(static_cast<std::size_t>(terminal_width(n)), 0.0)};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        term.blocks[1][static_cast<std::size_t>(transfer_index(n, i, j))] = -1.0;
      term.blocks[2][static_cast<std::size_t>(terminal_hold(i))] = 1.0;
    }
  }
  (void)terminal_stage;
  return term;
}

// Withdrawal score: each stage adds its own withdrawals.
ObjectiveTerm withdrawal_term(const PortfolioInstance& inst, int stage) {
  const int n = inst.option_count();
  ObjectiveTerm term;
  term.blocks.resize(static_cast<std::size_t>(stage + 1));
  for (int t = 0; t < stage; ++t)
    term.blocks[static_cast<std::size_t>(t)]
        .assign(static_cast<std::size_t>(transfer_width(n)), 0.0);
  if (stage < 2) {
    term.blocks[static_cast<std::size_t>(stage)]
        .assign(static_cast<std::size_t>(transfer_width(n)), 0.0);
    for (int i = 0; i < n; ++i)
      term.blocks[static_cast<std::size_t>(stage)][static_cast<std::size_t>(withdraw_index(n, i))] = 1.0;
  } else {
    term.blocks[2].assign(static_cast<std::size_t>(terminal_width(n)), 0.0);
    for (int i = 0; i < n; ++i)
      term.blocks[2][static_cast<std::size_t>(terminal_withdraw(i))] = 1.0;
  }
  return term;
}

}  // namespace

MSMOModel build_three_stage(const PortfolioInstance& inst) {
  inst.validate();
  const int n = inst.option_count();
  const ScenarioTree& tree = inst.tree;

  StageBlocks blocks;
  blocks.var_widths = {transfer_width(n), transfer_width(n), terminal_width(n)};
  blocks.var_names = {transfer_names(inst, 0), transfer_names(inst, 1), terminal_names(inst, 2)};

  blocks.rows.resize(3);
  blocks.rows[0].push_back(stage0_rows(inst));
  for (const auto& node : tree.nodes(1))
    blocks.rows[1].push_back(stage1_rows(inst, inst.state_index(tree.state_name(1, node.prefix[0]))));
  for (const auto& node : tree.nodes(2))
    blocks.rows[2].push_back(stage2_rows(inst, inst.state_index(tree.state_name(2, node.prefix[1]))));

  blocks.objectives.resize(2);
  blocks.objectives[0] = {{funds_term(inst, 0, false)},
                          std::vector<ObjectiveTerm>(tree.nodes(1).size(), funds_term(inst, 1, false)),
                          std::vector<ObjectiveTerm>(tree.nodes(2).size(), funds_term(inst, 2, true))};
  blocks.objectives[1] = {{withdrawal_term(inst, 0)},
                          std::vector<ObjectiveTerm>(tree.nodes(1).size(), withdrawal_term(inst, 1)),
                          std::vector<ObjectiveTerm>(tree.nodes(2).size(), withdrawal_term(inst, 2))};

  return assemble(tree, std::move(blocks), 2, {Sense::Maximize, Sense::Maximize},
                  ScoringMode::TerminalPath, true);
}

MSMOModel build_two_stage(const PortfolioInstance& inst) {
  inst.validate();
  const int n = inst.option_count();
  const ScenarioTree& three = inst.tree;

  ScenarioTree tree = build_tree(2, {three.states_at(1)}, {}, three.root_state());

  StageBlocks blocks;
  blocks.var_widths = {transfer_width(n), transfer_width(n)};
  blocks.var_names = {transfer_names(inst, 0), transfer_names(inst, 1)};
  blocks.rows.resize(2);
  blocks.rows[0].push_back(stage0_rows(inst));
  for (const auto& node : tree.nodes(1))
    blocks.rows[1].push_back(stage1_rows(inst, inst.state_index(tree.state_name(1, node.prefix[0]))));

  blocks.objectives.resize(2);
  blocks.objectives[0] = {{funds_term(inst, 0, false)},
                          std::vector<ObjectiveTerm>(tree.nodes(1).size(), funds_term(inst, 1, true))};
  blocks.objectives[1] = {{withdrawal_term(inst, 0)},
                          std::vector<ObjectiveTerm>(tree.nodes(1).size(), withdrawal_term(inst, 1))};

  return assemble(std::move(tree), std::move(blocks), 2, {Sense::Maximize, Sense::Maximize},
                  ScoringMode::TerminalPath, true);
}

namespace {

ReferencePoint reference_for(const PortfolioInstance& inst, const MSMOModel& model,
                             bool include_stage0_withdrawal) {
  ReferencePoint ref;
  const ScenarioTree& tree = model.tree();
  for (const auto& mref : model.meta_refs()) {
    const auto& prefix = tree.nodes(mref.stage)[static_cast<std::size_t>(mref.node)].prefix;
    const int terminal_stage = static_cast<int>(prefix.size());
    const std::string& terminal_state =
        tree.state_name(terminal_stage, prefix.back());
    double goal = 0.0;
    if (mref.objective == 0) {
      goal = inst.fund_goals[static_cast<std::size_t>(terminal_stage)].at(terminal_state);
    } else {
      if (include_stage0_withdrawal)
        goal += inst.withdrawal_goals[0].at(inst.root_state);
      for (int t = 1; t <= terminal_stage; ++t)
        goal += inst.withdrawal_goals[static_cast<std::size_t>(t)].at(
            tree.state_name(t, prefix[static_cast<std::size_t>(t - 1)]));
    }
    ref.goals.push_back(goal);
    ref.weights.push_back(1.0);
  }
  return ref;
}

}  // namespace

ReferencePoint three_stage_reference(const PortfolioInstance& inst, const MSMOModel& model) {
  return reference_for(inst, model, true);
}

ReferencePoint two_stage_reference(const PortfolioInstance& inst, const MSMOModel& model) {
  return reference_for(inst, model, true);
}

std::vector<ReferencePoint> residual_references(const PortfolioInstance& inst) {
  std::vector<ReferencePoint> refs;
  const ScenarioTree& tree = inst.tree;
  for (int s = 0; s < tree.state_count(1); ++s) {
    const std::string& k1 = tree.state_name(1, s);
    ReferencePoint ref;
    const auto& children = tree.nodes(1)[static_cast<std::size_t>(s)].children;
    for (int child : children) {
      const std::string& k2 =
          tree.state_name(2, tree.nodes(2)[static_cast<std::size_t>(child)].prefix[1]);
      // Path-major, objective-minor: funds goal then cumulative withdrawals,
      // with the sunk stage-0 withdrawal excluded.
      ref.goals.push_back(inst.fund_goals[2].at(k2));
      ref.weights.push_back(1.0);
      ref.goals.push_back(inst.withdrawal_goals[1].at(k1) + inst.withdrawal_goals[2].at(k2));
      ref.weights.push_back(1.0);
    }
    refs.push_back(std::move(ref));
  }
  return refs;
}

Money profit(Money remained, Money withdrawals, Money initial_capital) {
  return remained + withdrawals - initial_capital;
}

RobustnessReport robustness_report(const ObjectiveMatrix& matrix, Money min_acceptable_profit,
                                   Money initial_capital) {
  if (matrix.rows != 2)
    throw ShapeMismatchError("expected the remained-funds and withdrawal objective rows");
  RobustnessReport report;
  report.min_acceptable_profit = min_acceptable_profit;
  report.robust = true;
  Money worst = 0;
  for (int p = 0; p < matrix.cols; ++p) {
    RobustnessReport::Row row;
    row.path = matrix.col_labels.empty() ? ("path" + std::to_string(p))
                                         : matrix.col_labels[static_cast<std::size_t>(p)];
    row.remained = money::from_millions(matrix.at(0, p));
    row.withdrawal = money::from_millions(matrix.at(1, p));
    row.profit = profit(row.remained, row.withdrawal, initial_capital);
    if (p == 0 || row.profit < worst) {
      worst = row.profit;
      report.worst_path = p;
    }
    if (row.profit < min_acceptable_profit) report.robust = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace scenopt
