#pragma once

#include <random>
#include <vector>

#include "scenopt/model.hpp"
#include "scenopt/scalarize.hpp"
#include "scenopt/scenario_tree.hpp"

namespace scenopt::testing {

struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine);
  }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }
};

/// Random small scenario tree, 2..max_stages stages, 1..3 states per stage,
/// parent-dependent transitions with every state reachable.
ScenarioTree random_tree(Rng& rng, int max_stages = 4);

/// Random bounded LP for oracle comparisons: <=6 vars in finite boxes,
/// <=6 extra rows, mixed relations and sense. Roughly half are
/// feasible-by-construction; the rest may be infeasible.
LPProblem random_boxed_lp(Rng& rng);

/// Random feasible-bounded LP pair in min c'x, Ax >= b, x >= 0 form whose
/// dual is feasible too (strong duality holds).
LPProblem random_primal_for_duality(Rng& rng);

/// Random three-stage block model with only <= rows, a bounding row per
/// node, and a decision that is feasible by construction.
struct RandomModel {
  MSMOModel model;
  MetaDecision feasible;
};

struct RandomModelOptions {
  int max_states = 3;
  int max_width = 2;
  int max_rows = 2;
  int max_objectives = 2;
  bool maximize_only = false;
};

RandomModel random_three_stage_model(Rng& rng, const RandomModelOptions& opts = {});

/// Random candidate decision for a model, around the feasible point or
/// fully random depending on the draw.
MetaDecision random_candidate(Rng& rng, const MSMOModel& model, const MetaDecision& feasible);

/// Random attainable-or-not reference point for a model.
ReferencePoint random_reference(Rng& rng, const MSMOModel& model);

}  // namespace scenopt::testing
