#include "generators.hpp"

#include <set>
#include <string>

namespace scenopt::testing {

namespace {

std::vector<std::string> stage_names(int stage, int count) {
  std::vector<std::string> names;
  for (int i = 0; i < count; ++i)
    names.push_back("t" + std::to_string(stage) + static_cast<char>('a' + i));
  return names;
}

// Coefficients on a coarse grid keep the oracle's tolerance comparisons
// honest.
double grid(Rng& rng, double lo, double hi) {
  return std::round(rng.uniform(lo, hi) * 4.0) / 4.0;
}

}  // namespace

ScenarioTree random_tree(Rng& rng, int max_stages) {
  const int T = rng.uniform_int(2, max_stages);
  std::vector<std::vector<std::string>> states;
  for (int t = 1; t < T; ++t) states.push_back(stage_names(t, rng.uniform_int(1, 3)));

  std::vector<Transitions> transitions;
  for (int t = 1; t <= T - 2; ++t) {
    const auto& here = states[static_cast<std::size_t>(t - 1)];
    const auto& next = states[static_cast<std::size_t>(t)];
    Transitions adj;
    std::set<std::string> reached;
    for (const auto& from : here) {
      std::vector<std::string> tos;
      for (const auto& to : next)
        if (rng.chance(0.6)) tos.push_back(to);
      if (tos.empty()) tos.push_back(next[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(next.size()) - 1))]);
      for (const auto& to : tos) reached.insert(to);
      adj[from] = std::move(tos);
    }
    for (const auto& to : next)
      if (!reached.count(to))
        adj[here[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(here.size()) - 1))]]
            .push_back(to);
    transitions.push_back(std::move(adj));
  }
  return build_tree(T, std::move(states), transitions,
                    rng.chance(0.5) ? std::optional<std::string>("root") : std::nullopt);
}

LPProblem random_boxed_lp(Rng& rng) {
  LPProblem p;
  p.sense = rng.chance(0.5) ? Sense::Minimize : Sense::Maximize;
  const int n = rng.uniform_int(1, 6);
  for (int j = 0; j < n; ++j) {
    const double lo = rng.chance(0.25) ? grid(rng, -3.0, 0.0) : 0.0;
    const double up = lo + grid(rng, 0.5, 8.0) + 0.25;
    p.add_variable("x" + std::to_string(j), lo, up);
    p.cost[static_cast<std::size_t>(j)] = grid(rng, -3.0, 3.0);
  }
  // Half the time the rows are anchored on an interior point so the problem
  // is feasible; otherwise anything goes.
  std::vector<double> anchor(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    anchor[static_cast<std::size_t>(j)] =
        rng.uniform(p.lower[static_cast<std::size_t>(j)], p.upper[static_cast<std::size_t>(j)]);
  const bool anchored = rng.chance(0.5);
  const int rows = rng.uniform_int(0, 6);
  for (int r = 0; r < rows; ++r) {
    std::vector<double> coeffs(static_cast<std::size_t>(n));
    double at_anchor = 0.0;
    for (int j = 0; j < n; ++j) {
      coeffs[static_cast<std::size_t>(j)] = grid(rng, -2.0, 2.0);
      at_anchor += coeffs[static_cast<std::size_t>(j)] * anchor[static_cast<std::size_t>(j)];
    }
    const double roll = rng.uniform(0.0, 1.0);
    const Relation rel =
        roll < 0.45 ? Relation::LessEq : (roll < 0.9 ? Relation::GreaterEq : Relation::Equal);
    double rhs;
    if (anchored) {
      const double margin = rel == Relation::Equal ? 0.0 : grid(rng, 0.0, 2.0);
      rhs = rel == Relation::LessEq ? at_anchor + margin
                                    : (rel == Relation::GreaterEq ? at_anchor - margin : at_anchor);
    } else {
      rhs = grid(rng, -4.0, 4.0);
    }
    p.add_row(std::move(coeffs), rel, rhs);
  }
  return p;
}

LPProblem random_primal_for_duality(Rng& rng) {
  LPProblem p;
  p.sense = Sense::Minimize;
  const int n = rng.uniform_int(1, 5);
  const int m = rng.uniform_int(1, 5);
  for (int j = 0; j < n; ++j) p.add_variable("x" + std::to_string(j));

  // Primal feasibility via an anchor x^ >= 0, dual feasibility via an
  // anchor y^ >= 0 folded into the costs.
  std::vector<double> x_hat(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) x_hat[static_cast<std::size_t>(j)] = rng.uniform(0.0, 3.0);
  std::vector<double> y_hat(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) y_hat[static_cast<std::size_t>(r)] = rng.uniform(0.0, 2.0);

  std::vector<std::vector<double>> a(static_cast<std::size_t>(m),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  for (int r = 0; r < m; ++r) {
    double at_anchor = 0.0;
    for (int j = 0; j < n; ++j) {
      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = grid(rng, -2.0, 2.0);
      at_anchor += a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] *
                   x_hat[static_cast<std::size_t>(j)];
    }
    p.add_row(a[static_cast<std::size_t>(r)], Relation::GreaterEq,
              at_anchor - rng.uniform(0.0, 2.0));
  }
  for (int j = 0; j < n; ++j) {
    double aty = 0.0;
    for (int r = 0; r < m; ++r)
      aty += a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] *
             y_hat[static_cast<std::size_t>(r)];
    p.cost[static_cast<std::size_t>(j)] = aty + rng.uniform(0.0, 2.0);
  }
  return p;
}

RandomModel random_three_stage_model(Rng& rng, const RandomModelOptions& opts) {
  // Tree with exactly three stages.
  std::vector<std::vector<std::string>> states{stage_names(1, rng.uniform_int(1, opts.max_states)),
                                               stage_names(2, rng.uniform_int(1, opts.max_states))};
  Transitions adj;
  std::set<std::string> reached;
  for (const auto& from : states[0]) {
    std::vector<std::string> tos;
    for (const auto& to : states[1])
      if (rng.chance(0.6)) tos.push_back(to);
    if (tos.empty()) tos.push_back(states[1][static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(states[1].size()) - 1))]);
    for (const auto& to : tos) reached.insert(to);
    adj[from] = std::move(tos);
  }
  for (const auto& to : states[1])
    if (!reached.count(to))
      adj[states[0][static_cast<std::size_t>(
             rng.uniform_int(0, static_cast<int>(states[0].size()) - 1))]]
          .push_back(to);
  ScenarioTree tree = build_tree(3, states, {adj}, std::nullopt);

  StageBlocks blocks;
  blocks.var_widths = {rng.uniform_int(1, opts.max_width), rng.uniform_int(1, opts.max_width),
                       rng.uniform_int(1, opts.max_width)};

  // Feasible anchor decision.
  MetaDecision anchor;
  anchor.values.resize(3);
  for (int stage = 0; stage < 3; ++stage) {
    anchor.values[static_cast<std::size_t>(stage)].resize(
        static_cast<std::size_t>(tree.node_count(stage)));
    for (auto& v : anchor.values[static_cast<std::size_t>(stage)]) {
      v.resize(static_cast<std::size_t>(blocks.var_widths[static_cast<std::size_t>(stage)]));
      for (double& x : v) x = rng.uniform(0.0, 2.0);
    }
  }

  auto ancestry_of = [&](int stage, int node) {
    std::vector<int> ancestry(static_cast<std::size_t>(stage + 1));
    int cs = stage, cn = node;
    while (cs >= 0) {
      ancestry[static_cast<std::size_t>(cs)] = cn;
      cn = tree.nodes(cs)[static_cast<std::size_t>(cn)].parent;
      --cs;
    }
    return ancestry;
  };

  blocks.rows.resize(3);
  for (int stage = 0; stage < 3; ++stage) {
    const int extra_rows = rng.uniform_int(1, opts.max_rows);
    for (int node = 0; node < tree.node_count(stage); ++node) {
      const auto ancestry = ancestry_of(stage, node);
      std::vector<ConstraintRow> rows;
      for (int r = 0; r < extra_rows; ++r) {
        ConstraintRow row;
        double at_anchor = 0.0;
        for (int t = 0; t <= stage; ++t) {
          std::vector<double> block(
              static_cast<std::size_t>(blocks.var_widths[static_cast<std::size_t>(t)]));
          for (std::size_t j = 0; j < block.size(); ++j) {
            block[j] = grid(rng, -2.0, 2.0);
            at_anchor +=
                block[j] *
                anchor.values[static_cast<std::size_t>(t)]
                             [static_cast<std::size_t>(ancestry[static_cast<std::size_t>(t)])][j];
          }
          row.blocks.push_back(std::move(block));
        }
        row.rel = Relation::LessEq;
        row.rhs = at_anchor + rng.uniform(0.0, 2.0);
        rows.push_back(std::move(row));
      }
      // Bounding row over the node's own variables keeps everything finite.
      ConstraintRow box;
      for (int t = 0; t <= stage; ++t)
        box.blocks.emplace_back(
            static_cast<std::size_t>(blocks.var_widths[static_cast<std::size_t>(t)]), 0.0);
      for (double& c : box.blocks.back()) c = 1.0;
      box.rel = Relation::LessEq;
      box.rhs = 8.0;
      rows.push_back(std::move(box));
      blocks.rows[static_cast<std::size_t>(stage)].push_back(std::move(rows));
    }
  }

  const int m = rng.uniform_int(1, opts.max_objectives);
  std::vector<Sense> senses;
  for (int i = 0; i < m; ++i)
    senses.push_back(opts.maximize_only || rng.chance(0.5) ? Sense::Maximize : Sense::Minimize);

  blocks.objectives.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    auto& obj = blocks.objectives[static_cast<std::size_t>(i)];
    obj.resize(3);
    for (int stage = 0; stage < 3; ++stage)
      for (int node = 0; node < tree.node_count(stage); ++node) {
        ObjectiveTerm term;
        for (int t = 0; t <= stage; ++t) {
          std::vector<double> block(
              static_cast<std::size_t>(blocks.var_widths[static_cast<std::size_t>(t)]));
          for (double& c : block) c = grid(rng, -2.0, 2.0);
          term.blocks.push_back(std::move(block));
        }
        obj[static_cast<std::size_t>(stage)].push_back(std::move(term));
      }
  }

  RandomModel out{assemble(std::move(tree), std::move(blocks), m, std::move(senses),
                           ScoringMode::TerminalPath, true),
                  std::move(anchor)};
  return out;
}

MetaDecision random_candidate(Rng& rng, const MSMOModel& model, const MetaDecision& feasible) {
  MetaDecision d = feasible;
  const double roll = rng.uniform(0.0, 1.0);
  for (auto& stage : d.values)
    for (auto& node : stage)
      for (double& x : node) {
        if (roll < 0.4) {
          // keep the feasible anchor
        } else if (roll < 0.75) {
          x = std::max(0.0, x + rng.uniform(-0.5, 0.5));
        } else {
          x = rng.uniform(0.0, 6.0);
        }
      }
  return d;
}

ReferencePoint random_reference(Rng& rng, const MSMOModel& model) {
  ReferencePoint ref;
  ref.epsilon = 1e-3;
  for (int k = 0; k < model.meta_objective_count(); ++k) {
    ref.goals.push_back(rng.uniform(-20.0, 20.0));
    ref.weights.push_back(rng.uniform(0.25, 3.0));
  }
  return ref;
}

}  // namespace scenopt::testing
