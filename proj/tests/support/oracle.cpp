#include "oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace scenopt::testing {

namespace {

// Gaussian elimination with partial pivoting; false when singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (std::fabs(a[pivot][col]) < 1e-10) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double v = b[r];
    for (std::size_t c = r + 1; c < n; ++c) v -= a[r][c] * x[c];
    x[r] = v / a[r][r];
  }
  return true;
}

}  // namespace

OracleResult enumerate_vertices(const LPProblem& p, double tol) {
  p.validate();
  const int n = p.num_vars();
  for (int j = 0; j < n; ++j)
    if (p.lower[static_cast<std::size_t>(j)] == -kInfinity ||
        p.upper[static_cast<std::size_t>(j)] == kInfinity)
      throw std::invalid_argument("oracle needs finite bounds on every variable");

  // All constraints as rows, bounds included.
  struct Facet {
    std::vector<double> coeffs;
    Relation rel;
    double rhs;
  };
  std::vector<Facet> facets;
  for (const auto& row : p.rows) facets.push_back({row.coeffs, row.rel, row.rhs});
  for (int j = 0; j < n; ++j) {
    std::vector<double> unit(static_cast<std::size_t>(n), 0.0);
    unit[static_cast<std::size_t>(j)] = 1.0;
    facets.push_back({unit, Relation::GreaterEq, p.lower[static_cast<std::size_t>(j)]});
    facets.push_back({unit, Relation::LessEq, p.upper[static_cast<std::size_t>(j)]});
  }

  const int f = static_cast<int>(facets.size());
  OracleResult best;
  const double dir = p.sense == Sense::Minimize ? 1.0 : -1.0;

  std::vector<int> pick(static_cast<std::size_t>(n));
  auto feasible_at = [&](const std::vector<double>& x) {
    for (const Facet& facet : facets) {
      double lhs = 0.0;
      for (int j = 0; j < n; ++j)
        lhs += facet.coeffs[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
      switch (facet.rel) {
        case Relation::LessEq:
          if (lhs > facet.rhs + tol) return false;
          break;
        case Relation::GreaterEq:
          if (lhs < facet.rhs - tol) return false;
          break;
        case Relation::Equal:
          if (std::fabs(lhs - facet.rhs) > tol) return false;
          break;
      }
    }
    return true;
  };

  // Iterate over all n-subsets of facets.
  auto visit = [&](const std::vector<int>& subset) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (int idx : subset) {
      a.push_back(facets[static_cast<std::size_t>(idx)].coeffs);
      b.push_back(facets[static_cast<std::size_t>(idx)].rhs);
    }
    std::vector<double> x;
    if (!solve_square(std::move(a), std::move(b), x)) return;
    if (!feasible_at(x)) return;
    double obj = 0.0;
    for (int j = 0; j < n; ++j)
      obj += p.cost[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    if (!best.feasible || dir * obj < dir * best.objective) {
      best.feasible = true;
      best.objective = obj;
      best.point = std::move(x);
    }
  };

  for (int j = 0; j < n; ++j) pick[static_cast<std::size_t>(j)] = j;
  while (true) {
    visit(pick);
    int k = n - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == f - n + k) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (int c = k + 1; c < n; ++c)
      pick[static_cast<std::size_t>(c)] = pick[static_cast<std::size_t>(c - 1)] + 1;
  }
  return best;
}

LPProblem mechanical_dual(const LPProblem& primal) {
  for (const auto& row : primal.rows)
    if (row.rel != Relation::GreaterEq)
      throw std::invalid_argument("mechanical_dual expects Ax >= b form");
  for (int j = 0; j < primal.num_vars(); ++j)
    if (primal.lower[static_cast<std::size_t>(j)] != 0.0 ||
        primal.upper[static_cast<std::size_t>(j)] != kInfinity)
      throw std::invalid_argument("mechanical_dual expects x >= 0");
  if (primal.sense != Sense::Minimize)
    throw std::invalid_argument("mechanical_dual expects a minimisation");

  LPProblem dual;
  dual.sense = Sense::Maximize;
  const int m = primal.num_rows();
  for (int r = 0; r < m; ++r) dual.add_variable("y" + std::to_string(r));
  for (int r = 0; r < m; ++r)
    dual.cost[static_cast<std::size_t>(r)] = primal.rows[static_cast<std::size_t>(r)].rhs;
  for (int j = 0; j < primal.num_vars(); ++j) {
    std::vector<double> coeffs(static_cast<std::size_t>(m), 0.0);
    for (int r = 0; r < m; ++r)
      coeffs[static_cast<std::size_t>(r)] =
          primal.rows[static_cast<std::size_t>(r)].coeffs[static_cast<std::size_t>(j)];
    dual.add_row(std::move(coeffs), Relation::LessEq, primal.cost[static_cast<std::size_t>(j)]);
  }
  return dual;
}

}  // namespace scenopt::testing
