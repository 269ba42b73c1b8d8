#pragma once

#include <vector>

#include "scenopt/lp.hpp"

namespace scenopt::testing {

/// Brute-force LP oracle: enumerates every basis intersection of rows and
/// finite bounds, keeps the feasible ones and returns the best vertex.
/// Only valid for problems whose feasible region is bounded (all variables
/// must carry finite bounds). Independent of the simplex path.
struct OracleResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> point;
};

OracleResult enumerate_vertices(const LPProblem& p, double tol = 1e-7);

/// Mechanical dual of min c'x s.t. Ax >= b, x >= 0 (every row must be >=
/// and every variable [0, inf)): max b'y s.t. A'y <= c, y >= 0.
LPProblem mechanical_dual(const LPProblem& primal);

}  // namespace scenopt::testing
