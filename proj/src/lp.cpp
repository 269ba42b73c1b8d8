#include "scenopt/lp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>
#include <utility>

#include "scenopt/errors.hpp"

namespace scenopt {

int LPProblem::add_variable(std::string name, double lo, double up) {
  cost.push_back(0.0);
  lower.push_back(lo);
  upper.push_back(up);
  var_names.push_back(std::move(name));
  for (auto& row : rows) row.coeffs.push_back(0.0);
  return num_vars() - 1;
}

void LPProblem::add_row(std::vector<double> coeffs, Relation rel, double rhs) {
  rows.push_back(LPRow{std::move(coeffs), rel, rhs});
}

void LPProblem::validate() const {
  const std::size_t n = cost.size();
  if (lower.size() != n || upper.size() != n || var_names.size() != n)
    throw MalformedProblemError("variable metadata width mismatch");
  for (double c : cost)
    if (!std::isfinite(c)) throw MalformedProblemError("non-finite objective coefficient");
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j])
      throw MalformedProblemError("invalid bounds on variable " + std::to_string(j));
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].coeffs.size() != n)
      throw MalformedProblemError("row " + std::to_string(r) + " width mismatch");
    for (double a : rows[r].coeffs)
      if (!std::isfinite(a))
        throw MalformedProblemError("non-finite coefficient in row " + std::to_string(r));
    if (!std::isfinite(rows[r].rhs))
      throw MalformedProblemError("non-finite rhs in row " + std::to_string(r));
  }
}

const char* to_string(SolveResult::Status status) {
  switch (status) {
    case SolveResult::Status::Optimal: return "Optimal";
    case SolveResult::Status::Infeasible: return "Infeasible";
    case SolveResult::Status::Unbounded: return "Unbounded";
    case SolveResult::Status::IterationLimit: return "IterationLimit";
  }
  return "?";
}

namespace {

// Mapping from an original variable to canonical nonnegative columns.
struct VarMap {
  double offset = 0.0;
  int col = -1;
  int neg_col = -1;  // second column of a free split
  bool negated = false;
};

struct Tableau {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<int> basis;
  std::vector<bool> active;
  std::vector<double> d1, d2;  // reduced-cost rows (phase 1 / phase 2)
  double z1 = 0.0, z2 = 0.0;
  int first_artificial = 0;    // columns >= this are artificial

  int rows() const { return static_cast<int>(a.size()); }
  int cols() const { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

  void pivot(int r, int e) {
    const double piv = a[r][e];
    const double inv = 1.0 / piv;
    auto& row = a[r];
    for (double& v : row) v *= inv;
    b[r] *= inv;
    row[e] = 1.0;
    const int m = rows();
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      const double f = a[i][e];
      if (f == 0.0) continue;
      auto& ri = a[i];
      for (int c = 0; c < static_cast<int>(ri.size()); ++c) ri[c] -= f * row[c];
      ri[e] = 0.0;
      b[i] -= f * b[r];
    }
    const double f1 = d1[e];
    if (f1 != 0.0) {
      for (int c = 0; c < cols(); ++c) d1[c] -= f1 * row[c];
      d1[e] = 0.0;
      z1 += f1 * b[r];
    }
    const double f2 = d2[e];
    if (f2 != 0.0) {
      for (int c = 0; c < cols(); ++c) d2[c] -= f2 * row[c];
      d2[e] = 0.0;
      z2 += f2 * b[r];
    }
    basis[r] = e;
  }
};

enum class PhaseOutcome { Converged, Unbounded, IterationLimit };

PhaseOutcome run_phase(Tableau& t, bool phase_one, const SimplexOptions& opts, int cap,
                       int& iterations) {
  const std::vector<double>& d = phase_one ? t.d1 : t.d2;
  bool bland = false;
  int degenerate_streak = 0;
  double last_obj = phase_one ? t.z1 : t.z2;
  while (true) {
    if (iterations >= cap) return PhaseOutcome::IterationLimit;
    const int limit = phase_one ? t.cols() : t.first_artificial;
    int enter = -1;
    double best = -opts.optimality_tol;
    for (int c = 0; c < limit; ++c) {
      if (d[c] < best) {
        enter = c;
        if (bland) break;
        best = d[c];
      }
    }
    if (enter < 0) return PhaseOutcome::Converged;

    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < t.rows(); ++r) {
      if (!t.active[r]) continue;
      const double coeff = t.a[r][enter];
      if (coeff <= opts.pivot_tol) continue;
      const double ratio = t.b[r] / coeff;
      if (leave < 0 || ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && t.basis[r] < t.basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return PhaseOutcome::Unbounded;

    t.pivot(leave, enter);
    ++iterations;

    const double obj = phase_one ? t.z1 : t.z2;
    if (obj > last_obj - 1e-12) {
      if (++degenerate_streak >= opts.degeneracy_threshold) bland = true;
    } else {
      degenerate_streak = 0;
    }
    last_obj = obj;
  }
}

}  // namespace

SolveResult solve(const LPProblem& p, const SimplexOptions& opts) {
  p.validate();
  const int n = p.num_vars();

  // Canonicalise to: minimise over nonnegative columns, rows kept as-is.
  std::vector<double> cost(p.cost);
  if (p.sense == Sense::Maximize)
    for (double& c : cost) c = -c;

  std::vector<VarMap> vmap(static_cast<std::size_t>(n));
  int ny = 0;
  for (int j = 0; j < n; ++j) {
    VarMap& v = vmap[static_cast<std::size_t>(j)];
    const double lo = p.lower[static_cast<std::size_t>(j)];
    const double up = p.upper[static_cast<std::size_t>(j)];
    if (lo == -kInfinity && up == kInfinity) {
      v.col = ny++;
      v.neg_col = ny++;
    } else if (lo == -kInfinity) {
      v.offset = up;
      v.negated = true;
      v.col = ny++;
    } else {
      v.offset = lo;
      v.col = ny++;
    }
  }

  // Rows in canonical column space; two-sided bounds become extra rows.
  struct CanonRow {
    std::vector<double> coeffs;
    Relation rel;
    double rhs;
  };
  std::vector<CanonRow> canon;
  canon.reserve(p.rows.size());
  auto scatter = [&](const std::vector<double>& coeffs, Relation rel, double rhs) {
    CanonRow row{std::vector<double>(static_cast<std::size_t>(ny), 0.0), rel, rhs};
    for (int j = 0; j < n; ++j) {
      const double a = coeffs[static_cast<std::size_t>(j)];
      if (a == 0.0) continue;
      const VarMap& v = vmap[static_cast<std::size_t>(j)];
      const double s = v.negated ? -a : a;
      row.coeffs[static_cast<std::size_t>(v.col)] += s;
      if (v.neg_col >= 0) row.coeffs[static_cast<std::size_t>(v.neg_col)] -= a;
      row.rhs -= a * v.offset;
    }
    canon.push_back(std::move(row));
  };
  for (const auto& row : p.rows) scatter(row.coeffs, row.rel, row.rhs);
  for (int j = 0; j < n; ++j) {
    const double lo = p.lower[static_cast<std::size_t>(j)];
    const double up = p.upper[static_cast<std::size_t>(j)];
    if (lo != -kInfinity && up != kInfinity && up > lo) {
      std::vector<double> coeffs(static_cast<std::size_t>(n), 0.0);
      coeffs[static_cast<std::size_t>(j)] = 1.0;
      scatter(coeffs, Relation::LessEq, up);
    } else if (lo == up) {
      std::vector<double> coeffs(static_cast<std::size_t>(n), 0.0);
      coeffs[static_cast<std::size_t>(j)] = 1.0;
      scatter(coeffs, Relation::Equal, up);
    }
  }

  // Canonical cost over columns plus the constant from offsets.
  std::vector<double> ccost(static_cast<std::size_t>(ny), 0.0);
  for (int j = 0; j < n; ++j) {
    const VarMap& v = vmap[static_cast<std::size_t>(j)];
    const double c = cost[static_cast<std::size_t>(j)];
    ccost[static_cast<std::size_t>(v.col)] += v.negated ? -c : c;
    if (v.neg_col >= 0) ccost[static_cast<std::size_t>(v.neg_col)] -= c;
  }

  const int m = static_cast<int>(canon.size());
  int extra = 0;  // slack/surplus columns
  int n_art = 0;
  for (auto& row : canon) {
    if (row.rhs < 0) {
      for (double& c : row.coeffs) c = -c;
      row.rhs = -row.rhs;
      row.rel = row.rel == Relation::LessEq
                    ? Relation::GreaterEq
                    : (row.rel == Relation::GreaterEq ? Relation::LessEq : Relation::Equal);
    }
    if (row.rel != Relation::Equal) ++extra;
    if (row.rel != Relation::LessEq) ++n_art;
  }

  Tableau t;
  const int total = ny + extra + n_art;
  t.first_artificial = ny + extra;
  t.a.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(total), 0.0));
  t.b.resize(static_cast<std::size_t>(m));
  t.basis.assign(static_cast<std::size_t>(m), -1);
  t.active.assign(static_cast<std::size_t>(m), true);
  t.d1.assign(static_cast<std::size_t>(total), 0.0);
  t.d2.assign(static_cast<std::size_t>(total), 0.0);

  int next_extra = ny;
  int next_art = t.first_artificial;
  for (int r = 0; r < m; ++r) {
    auto& row = canon[static_cast<std::size_t>(r)];
    std::copy(row.coeffs.begin(), row.coeffs.end(), t.a[static_cast<std::size_t>(r)].begin());
    t.b[static_cast<std::size_t>(r)] = row.rhs;
    if (row.rel == Relation::LessEq) {
      t.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(next_extra)] = 1.0;
      t.basis[static_cast<std::size_t>(r)] = next_extra++;
    } else {
      if (row.rel == Relation::GreaterEq)
        t.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(next_extra++)] = -1.0;
      t.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(next_art)] = 1.0;
      t.basis[static_cast<std::size_t>(r)] = next_art++;
    }
  }

  // Price out the initial basis: artificials cost 1 in phase 1, and all
  // initial basic columns have zero phase-2 cost.
  for (int c = 0; c < total; ++c) t.d2[static_cast<std::size_t>(c)] = c < ny ? ccost[static_cast<std::size_t>(c)] : 0.0;
  for (int r = 0; r < m; ++r) {
    if (t.basis[static_cast<std::size_t>(r)] < t.first_artificial) continue;
    for (int c = 0; c < total; ++c)
      t.d1[static_cast<std::size_t>(c)] -= t.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    t.z1 += t.b[static_cast<std::size_t>(r)];
  }
  for (int c = t.first_artificial; c < total; ++c) t.d1[static_cast<std::size_t>(c)] += 1.0;

  SolveResult result;
  const int cap = opts.max_iterations > 0 ? opts.max_iterations : 2000 + 200 * (m + total);
  int iterations = 0;

  if (n_art > 0) {
    const PhaseOutcome ph1 = run_phase(t, true, opts, cap, iterations);
    result.iterations = iterations;
    if (ph1 == PhaseOutcome::IterationLimit) {
      result.status = SolveResult::Status::IterationLimit;
      return result;
    }
    if (t.z1 > opts.feasibility_tol) {
      result.status = SolveResult::Status::Infeasible;
      return result;
    }
    // Drive remaining artificials out of the basis; a row that offers no
    // pivot is linearly dependent and is dropped.
    for (int r = 0; r < m; ++r) {
      if (t.basis[static_cast<std::size_t>(r)] < t.first_artificial) continue;
      int e = -1;
      for (int c = 0; c < t.first_artificial; ++c) {
        if (std::fabs(t.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) > opts.pivot_tol) {
          e = c;
          break;
        }
      }
      if (e >= 0) {
        t.pivot(r, e);
        ++iterations;
      } else {
        t.active[static_cast<std::size_t>(r)] = false;
      }
    }
  }

  const PhaseOutcome ph2 = run_phase(t, false, opts, cap, iterations);
  result.iterations = iterations;
  if (ph2 == PhaseOutcome::IterationLimit) {
    result.status = SolveResult::Status::IterationLimit;
    return result;
  }
  if (ph2 == PhaseOutcome::Unbounded) {
    result.status = SolveResult::Status::Unbounded;
    return result;
  }

  std::vector<double> y(static_cast<std::size_t>(total), 0.0);
  for (int r = 0; r < m; ++r)
    if (t.active[static_cast<std::size_t>(r)])
      y[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(r)])] = t.b[static_cast<std::size_t>(r)];

  result.point.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const VarMap& v = vmap[static_cast<std::size_t>(j)];
    double val = y[static_cast<std::size_t>(v.col)];
    if (v.neg_col >= 0) val -= y[static_cast<std::size_t>(v.neg_col)];
    if (v.negated) val = -val;
    result.point[static_cast<std::size_t>(j)] = val + v.offset;
  }
  result.objective_value = 0.0;
  for (int j = 0; j < n; ++j)
    result.objective_value += p.cost[static_cast<std::size_t>(j)] * result.point[static_cast<std::size_t>(j)];
  result.status = SolveResult::Status::Optimal;
  return result;
}

ViolationReport check_point(const LPProblem& p, std::span<const double> point, double tol) {
  if (static_cast<int>(point.size()) != p.num_vars())
    throw DimensionMismatchError("point width " + std::to_string(point.size()) +
                                 " does not match " + std::to_string(p.num_vars()) + " variables");
  ViolationReport report;
  auto record = [&](Violation::Kind kind, int index, double amount) {
    if (amount > tol) {
      report.entries.push_back(Violation{kind, index, amount});
      report.max_violation = std::max(report.max_violation, amount);
    }
  };
  for (int r = 0; r < p.num_rows(); ++r) {
    const LPRow& row = p.rows[static_cast<std::size_t>(r)];
    double lhs = 0.0;
    for (int j = 0; j < p.num_vars(); ++j)
      lhs += row.coeffs[static_cast<std::size_t>(j)] * point[static_cast<std::size_t>(j)];
    double amount = 0.0;
    switch (row.rel) {
      case Relation::LessEq: amount = lhs - row.rhs; break;
      case Relation::GreaterEq: amount = row.rhs - lhs; break;
      case Relation::Equal: amount = std::fabs(lhs - row.rhs); break;
    }
    record(Violation::Kind::Row, r, amount);
  }
  for (int j = 0; j < p.num_vars(); ++j) {
    record(Violation::Kind::LowerBound, j, p.lower[static_cast<std::size_t>(j)] - point[static_cast<std::size_t>(j)]);
    record(Violation::Kind::UpperBound, j, point[static_cast<std::size_t>(j)] - p.upper[static_cast<std::size_t>(j)]);
  }
  return report;
}

namespace {

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  return true;
}

// Shortest decimal form that parses back to the same double.
std::string format_exact(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

void append_terms(std::ostringstream& out, const std::vector<double>& coeffs,
                  const std::vector<std::string>& names) {
  bool first = true;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double c = coeffs[j];
    if (c == 0.0) continue;
    if (first) {
      if (c < 0) out << "- ";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    out << format_exact(std::fabs(c)) << ' ' << names[j];
  }
  if (first) out << "0 " << names.at(0);
}

}  // namespace

std::string export_lp(const LPProblem& p) {
  p.validate();
  std::set<std::string> seen;
  for (const auto& name : p.var_names) {
    if (!valid_name(name)) throw InvalidNameError("invalid variable name '" + name + "'");
    if (!seen.insert(name).second) throw InvalidNameError("duplicate variable name '" + name + "'");
  }
  std::ostringstream out;
  out << (p.sense == Sense::Minimize ? "Minimize" : "Maximize") << '\n';
  out << " obj: ";
  {
    std::ostringstream expr;
    append_terms(expr, p.cost, p.var_names);
    out << expr.str() << '\n';
  }
  out << "Subject To\n";
  for (int r = 0; r < p.num_rows(); ++r) {
    const LPRow& row = p.rows[static_cast<std::size_t>(r)];
    std::ostringstream expr;
    append_terms(expr, row.coeffs, p.var_names);
    const char* rel = row.rel == Relation::LessEq ? "<=" : row.rel == Relation::GreaterEq ? ">=" : "=";
    out << " c" << r << ": " << expr.str() << ' ' << rel << ' ' << format_exact(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < p.num_vars(); ++j) {
    const double lo = p.lower[static_cast<std::size_t>(j)];
    const double up = p.upper[static_cast<std::size_t>(j)];
    const std::string& name = p.var_names[static_cast<std::size_t>(j)];
    if (lo == -kInfinity && up == kInfinity)
      out << ' ' << name << " free\n";
    else if (up == kInfinity)
      out << ' ' << name << " >= " << format_exact(lo) << '\n';
    else if (lo == -kInfinity)
      out << ' ' << name << " <= " << format_exact(up) << '\n';
    else
      out << ' ' << format_exact(lo) << " <= " << name << " <= " << format_exact(up) << '\n';
  }
  out << "End\n";
  return out.str();
}

namespace {

std::string lower_copy(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) tokens.push_back(std::exchange(cur, {}));
    } else if (ch == '+' || ch == '-') {
      if (!cur.empty()) tokens.push_back(std::exchange(cur, {}));
      tokens.emplace_back(1, ch);
    } else if (ch == '<' || ch == '>' || ch == '=') {
      // relations stick together (<=, >=, =)
      if (!cur.empty() && cur != "<" && cur != ">") tokens.push_back(std::exchange(cur, {}));
      cur += ch;
      if (ch == '=') tokens.push_back(std::exchange(cur, {}));
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

bool parse_number(const std::string& tok, double& out) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + tok.size() && !tok.empty();
}

struct ParsedExpr {
  std::vector<std::pair<std::string, double>> terms;
};

// Parses "[label:] term (+|- term)*" where term = [sign] [number] name.
ParsedExpr parse_expr(const std::vector<std::string>& tokens, std::size_t begin, std::size_t end,
                      int line_no) {
  ParsedExpr expr;
  double sign = 1.0;
  bool pending_coeff = false;
  double coeff = 1.0;
  for (std::size_t k = begin; k < end; ++k) {
    const std::string& tok = tokens[k];
    if (tok == "+" || tok == "-") {
      if (pending_coeff)
        throw LPParseError("dangling coefficient on line " + std::to_string(line_no));
      sign = tok == "-" ? -sign : sign;
      continue;
    }
    double value;
    if (parse_number(tok, value)) {
      if (pending_coeff)
        throw LPParseError("two consecutive numbers on line " + std::to_string(line_no));
      coeff = value;
      pending_coeff = true;
      continue;
    }
    expr.terms.emplace_back(tok, sign * (pending_coeff ? coeff : 1.0));
    sign = 1.0;
    coeff = 1.0;
    pending_coeff = false;
  }
  if (pending_coeff) throw LPParseError("trailing number on line " + std::to_string(line_no));
  return expr;
}

}  // namespace

LPProblem parse_lp(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }

  enum class Section { None, Objective, Constraints, Bounds, Done };
  auto section_of = [](const std::string& line, Sense& sense) {
    const std::string low = lower_copy(line);
    if (low == "minimize" || low == "min") {
      sense = Sense::Minimize;
      return Section::Objective;
    }
    if (low == "maximize" || low == "max") {
      sense = Sense::Maximize;
      return Section::Objective;
    }
    if (low == "subject to" || low == "st" || low == "s.t.") return Section::Constraints;
    if (low == "bounds") return Section::Bounds;
    if (low == "end") return Section::Done;
    return Section::None;
  };

  LPProblem p;
  // First pass: collect variables from the Bounds section, in order.
  struct BoundSpec {
    double lo, up;
  };
  std::vector<std::pair<std::string, BoundSpec>> bound_list;
  {
    Section section = Section::None;
    Sense ignored;
    for (std::size_t li = 0; li < lines.size(); ++li) {
      std::string trimmed = lines[li];
      while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
        trimmed.pop_back();
      std::size_t beg = 0;
      while (beg < trimmed.size() && std::isspace(static_cast<unsigned char>(trimmed[beg]))) ++beg;
      trimmed = trimmed.substr(beg);
      if (trimmed.empty() || trimmed[0] == '\\') continue;
      const Section s = section_of(trimmed, ignored);
      if (s != Section::None) {
        section = s;
        continue;
      }
      if (section != Section::Bounds) continue;
      auto tokens = tokenize(trimmed);
      const int line_no = static_cast<int>(li + 1);
      if (tokens.size() == 2 && lower_copy(tokens[1]) == "free") {
        bound_list.emplace_back(tokens[0], BoundSpec{-kInfinity, kInfinity});
      } else if (tokens.size() == 3 && (tokens[1] == ">=" || tokens[1] == "<=")) {
        double v;
        if (!parse_number(tokens[2], v)) throw LPParseError("bad bound on line " + std::to_string(line_no));
        if (tokens[1] == ">=")
          bound_list.emplace_back(tokens[0], BoundSpec{v, kInfinity});
        else
          bound_list.emplace_back(tokens[0], BoundSpec{-kInfinity, v});
      } else if (tokens.size() == 5 && tokens[1] == "<=" && tokens[3] == "<=") {
        double lo, up;
        if (!parse_number(tokens[0], lo) || !parse_number(tokens[4], up))
          throw LPParseError("bad bound on line " + std::to_string(line_no));
        bound_list.emplace_back(tokens[2], BoundSpec{lo, up});
      } else {
        throw LPParseError("unrecognised bounds line " + std::to_string(line_no));
      }
    }
  }
  for (auto& [name, spec] : bound_list) p.add_variable(name, spec.lo, spec.up);
  std::size_t next_unseen = p.var_names.size();

  auto column_of = [&](const std::string& name) {
    for (std::size_t j = 0; j < p.var_names.size(); ++j)
      if (p.var_names[j] == name) return static_cast<int>(j);
    p.add_variable(name);
    return static_cast<int>(next_unseen = p.var_names.size()) - 1;
  };

  Section section = Section::None;
  bool saw_objective = false;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::string trimmed = lines[li];
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    std::size_t beg = 0;
    while (beg < trimmed.size() && std::isspace(static_cast<unsigned char>(trimmed[beg]))) ++beg;
    trimmed = trimmed.substr(beg);
    if (trimmed.empty() || trimmed[0] == '\\') continue;
    const Section s = section_of(trimmed, p.sense);
    if (s != Section::None) {
      section = s;
      if (section == Section::Done) break;
      continue;
    }
    const int line_no = static_cast<int>(li + 1);
    if (section == Section::Objective || section == Section::Constraints) {
      // Strip an optional "label:" prefix.
      auto colon = trimmed.find(':');
      std::string body = colon == std::string::npos ? trimmed : trimmed.substr(colon + 1);
      auto tokens = tokenize(body);
      if (section == Section::Objective) {
        auto expr = parse_expr(tokens, 0, tokens.size(), line_no);
        for (auto& [name, c] : expr.terms)
          p.cost[static_cast<std::size_t>(column_of(name))] += c;
        saw_objective = true;
      } else {
        std::size_t rel_pos = tokens.size();
        Relation rel = Relation::LessEq;
        for (std::size_t k = 0; k < tokens.size(); ++k) {
          if (tokens[k] == "<=" || tokens[k] == ">=" || tokens[k] == "=") {
            rel_pos = k;
            rel = tokens[k] == "<=" ? Relation::LessEq
                                    : (tokens[k] == ">=" ? Relation::GreaterEq : Relation::Equal);
            break;
          }
        }
        if (rel_pos + 2 != tokens.size() && rel_pos + 3 != tokens.size())
          throw LPParseError("missing relation or rhs on line " + std::to_string(line_no));
        double rhs_sign = 1.0;
        std::size_t rhs_idx = rel_pos + 1;
        if (rel_pos + 3 == tokens.size()) {
          if (tokens[rhs_idx] == "-")
            rhs_sign = -1.0;
          else if (tokens[rhs_idx] != "+")
            throw LPParseError("bad rhs on line " + std::to_string(line_no));
          ++rhs_idx;
        }
        double rhs;
        if (!parse_number(tokens[rhs_idx], rhs))
          throw LPParseError("bad rhs on line " + std::to_string(line_no));
        auto expr = parse_expr(tokens, 0, rel_pos, line_no);
        std::vector<double> coeffs(p.cost.size(), 0.0);
        for (auto& [name, c] : expr.terms) {
          const int col = column_of(name);
          if (coeffs.size() < p.cost.size()) coeffs.resize(p.cost.size(), 0.0);
          coeffs[static_cast<std::size_t>(col)] += c;
        }
        coeffs.resize(p.cost.size(), 0.0);
        for (auto& row : p.rows) row.coeffs.resize(p.cost.size(), 0.0);
        p.add_row(std::move(coeffs), rel, rhs_sign * rhs);
      }
    } else if (section == Section::None) {
      throw LPParseError("content before a section header on line " + std::to_string(line_no));
    }
  }
  if (!saw_objective) throw LPParseError("no objective section");
  p.cost.resize(p.var_names.size(), 0.0);
  for (auto& row : p.rows) row.coeffs.resize(p.var_names.size(), 0.0);
  p.validate();
  return p;
}

}  // namespace scenopt
