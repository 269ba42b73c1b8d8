#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace scenopt {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEq, Equal, GreaterEq };

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct LPRow {
  std::vector<double> coeffs;
  Relation rel = Relation::LessEq;
  double rhs = 0.0;

  bool operator==(const LPRow&) const = default;
};

/// Dense single-objective LP. Variables default to [0, +inf); a free
/// variable has bounds (-inf, +inf).
struct LPProblem {
  Sense sense = Sense::Minimize;
  std::vector<double> cost;
  std::vector<LPRow> rows;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> var_names;

  int num_vars() const { return static_cast<int>(cost.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  /// Appends a variable; returns its column index.
  int add_variable(std::string name, double lo = 0.0, double up = kInfinity);
  void add_row(std::vector<double> coeffs, Relation rel, double rhs);

  /// Throws MalformedProblemError on width mismatch or non-finite data.
  void validate() const;

  bool operator==(const LPProblem&) const = default;
};

struct SolveResult {
  enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

  Status status = Status::Infeasible;
  std::vector<double> point;    // populated when Optimal
  double objective_value = 0.0; // in the problem's own sense, when Optimal
  int iterations = 0;
};

const char* to_string(SolveResult::Status status);

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-8;
  /// 0 = derive from problem size.
  int max_iterations = 0;
  /// Consecutive degenerate pivots tolerated before switching to Bland's rule.
  int degeneracy_threshold = 40;
};

/// Two-phase dense simplex. A solve holds no shared state; distinct
/// problems may be solved concurrently.
SolveResult solve(const LPProblem& p, const SimplexOptions& opts = {});

struct Violation {
  enum class Kind { Row, LowerBound, UpperBound };
  Kind kind = Kind::Row;
  int index = 0;
  double amount = 0.0;
};

/// Per-row and per-bound violations above `tol`; empty iff feasible.
struct ViolationReport {
  std::vector<Violation> entries;
  double max_violation = 0.0;

  bool empty() const { return entries.empty(); }
};

ViolationReport check_point(const LPProblem& p, std::span<const double> point, double tol);

/// Emits a textual LP interchange document (objective sense, objective,
/// constraints, bounds with free markers, end marker). parse_lp on the
/// emitted text reproduces the problem exactly.
std::string export_lp(const LPProblem& p);

/// Parses the dialect produced by export_lp. Throws LPParseError.
LPProblem parse_lp(const std::string& text);

}  // namespace scenopt
