#include "scenopt/report.hpp"

#include <cstdio>
#include <sstream>

#include "scenopt/errors.hpp"
#include "scenopt/money.hpp"

namespace scenopt {

namespace {

std::string currency_fixed(double millions) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", millions * 1e6);
  return buf;
}

std::string rounded_units(double millions) {
  return money::format_units(money::round_to_hundred(money::from_millions(millions)));
}

std::string objective_name(int i) { return "Z" + std::to_string(i + 1); }

}  // namespace

std::string solution_table(const PortfolioInstance& inst, const MSMOModel& model,
                           const MetaDecision& decision, const std::string& label) {
  const int n = inst.option_count();
  const ScenarioTree& tree = model.tree();
  const int T = model.stage_count();
  std::ostringstream out;
  out << "solution (" << label << ")\n";

  // Holdings per option after a rebalancing stage are the amounts arriving
  // into each option; the trailing column is that node's withdrawal.
  auto rebalance_line = [&](int stage, int node) {
    const auto& v = decision.values[static_cast<std::size_t>(stage)][static_cast<std::size_t>(node)];
    std::ostringstream line;
    line << "(";
    for (int j = 0; j < n; ++j) {
      double holding = 0.0;
      for (int i = 0; i < n; ++i) holding += v[static_cast<std::size_t>(i * (n + 1) + j)];
      line << (j ? ", " : "") << rounded_units(holding);
    }
    line << ")";
    double withdrawal = 0.0;
    for (int i = 0; i < n; ++i) withdrawal += v[static_cast<std::size_t>(i * (n + 1) + n)];
    line << "  withdrawal " << rounded_units(withdrawal);
    return line.str();
  };

  out << "stage 0 holdings " << rebalance_line(0, 0) << "\n";
  for (int node = 0; node < tree.node_count(1); ++node)
    out << "stage 1 [" << tree.node_label(1, node) << "] holdings " << rebalance_line(1, node)
        << "\n";
  if (T == 3) {
    for (int node = 0; node < tree.node_count(2); ++node) {
      const auto& v = decision.values[2][static_cast<std::size_t>(node)];
      double withdrawal = 0.0, worth = 0.0;
      for (int i = 0; i < n; ++i) {
        withdrawal += v[static_cast<std::size_t>(2 * i)];
        worth += v[static_cast<std::size_t>(2 * i + 1)];
      }
      // Cumulative withdrawal along the path.
      double cumulative = withdrawal;
      {
        const auto& node2 = tree.nodes(2)[static_cast<std::size_t>(node)];
        const auto& v1 = decision.values[1][static_cast<std::size_t>(node2.parent)];
        const auto& v0 = decision.values[0][0];
        for (int i = 0; i < n; ++i) {
          cumulative += v1[static_cast<std::size_t>(i * (n + 1) + n)];
          cumulative += v0[static_cast<std::size_t>(i * (n + 1) + n)];
        }
      }
      out << "path [" << tree.node_label(2, node) << "] end worth " << rounded_units(worth)
          << "  stage-2 withdrawal " << rounded_units(withdrawal) << "  total withdrawal "
          << rounded_units(cumulative) << "\n";
    }
  }
  return out.str();
}

std::string objectives_csv(const MSMOModel& model, const ObjectiveMatrix& matrix) {
  std::ostringstream out;
  out << "objective,path,value\n";
  for (const auto& mref : model.meta_refs())
    out << objective_name(mref.objective) << ',' << mref.label << ','
        << currency_fixed(matrix.at(mref.objective, model.matrix_column(mref))) << '\n';
  return out.str();
}

std::string deviations_csv(const MSMOModel& model, const ReferencePoint& ref,
                           const ScalarizationResult& result) {
  std::ostringstream out;
  out << "objective,path,goal,value,deviation,weight\n";
  for (std::size_t k = 0; k < model.meta_refs().size(); ++k) {
    const auto& mref = model.meta_refs()[k];
    char wbuf[32];
    std::snprintf(wbuf, sizeof wbuf, "%g", ref.weights[k]);
    out << objective_name(mref.objective) << ',' << mref.label << ','
        << currency_fixed(ref.goals[k]) << ','
        << currency_fixed(result.objective_matrix.at(mref.objective, model.matrix_column(mref)))
        << ',' << currency_fixed(result.deviations[k]) << ',' << wbuf << '\n';
  }
  return out.str();
}

std::string export_attainment(const std::vector<ObjectiveMatrix>& matrices,
                              const std::vector<std::string>& labels) {
  if (matrices.size() != labels.size())
    throw ShapeMismatchError("need one label per objective matrix");
  for (std::size_t i = 1; i < matrices.size(); ++i)
    if (matrices[i].rows != matrices[0].rows || matrices[i].cols != matrices[0].cols)
      throw ShapeMismatchError("objective matrices are not congruent");
  std::ostringstream out;
  out << "solution_label,path_id,objective_id,value\n";
  for (std::size_t m = 0; m < matrices.size(); ++m) {
    const ObjectiveMatrix& matrix = matrices[m];
    for (int p = 0; p < matrix.cols; ++p) {
      const std::string path = matrix.col_labels.empty()
                                   ? "path" + std::to_string(p)
                                   : matrix.col_labels[static_cast<std::size_t>(p)];
      for (int i = 0; i < matrix.rows; ++i)
        out << labels[m] << ',' << path << ',' << objective_name(i) << ','
            << currency_fixed(matrix.at(i, p)) << '\n';
    }
  }
  return out.str();
}

std::string dominance_report(const ObjectiveMatrix& a, const ObjectiveMatrix& b,
                             const std::string& label_a, const std::string& label_b,
                             const std::vector<Sense>& senses) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw ShapeMismatchError("objective matrices are not congruent");
  std::ostringstream out;
  out << "dominance of '" << label_a << "' vs '" << label_b << "'\n";
  for (int p = 0; p < a.cols; ++p) {
    ObjectiveMatrix ca{a.rows, 1, {}, {}};
    ObjectiveMatrix cb{b.rows, 1, {}, {}};
    for (int i = 0; i < a.rows; ++i) {
      ca.entries.push_back(a.at(i, p));
      cb.entries.push_back(b.at(i, p));
    }
    const std::string path = a.col_labels.empty() ? "path" + std::to_string(p)
                                                  : a.col_labels[static_cast<std::size_t>(p)];
    out << "path [" << path << "]: " << to_string(dominates(ca, cb, senses)) << '\n';
  }
  out << "overall: " << to_string(dominates(a, b, senses)) << '\n';
  return out.str();
}

std::string robustness_table(const std::vector<RobustnessReport>& reports,
                             const std::vector<std::string>& labels) {
  if (reports.size() != labels.size())
    throw ShapeMismatchError("need one label per robustness report");
  std::ostringstream out;
  for (std::size_t r = 0; r < reports.size(); ++r) {
    const RobustnessReport& rep = reports[r];
    out << "solution '" << labels[r] << "' (minimum acceptable profit "
        << money::format_units(rep.min_acceptable_profit) << ")\n";
    out << "path,remained,withdrawal,profit\n";
    for (const auto& row : rep.rows)
      out << row.path << ',' << money::format_units(money::round_to_hundred(row.remained)) << ','
          << money::format_units(money::round_to_hundred(row.withdrawal)) << ','
          << money::format_units(money::round_to_hundred(row.profit)) << '\n';
    const auto& worst = rep.rows[static_cast<std::size_t>(rep.worst_path)];
    out << "robust: " << (rep.robust ? "yes" : "no") << "  worst path [" << worst.path
        << "] profit " << money::format_units(money::round_to_hundred(worst.profit)) << "\n\n";
  }
  return out.str();
}

std::string horizon_report(const HorizonRun& run) {
  std::ostringstream out;
  out << "moving-horizon run\n";
  out << "fixed initial decision from the first two-stage model; phi "
      << run.first_stage.phi << ", psi " << run.first_stage.psi << "\n";
  for (const auto& residual : run.residuals) {
    out << "residual [" << residual.scenario << "]: " << to_string(residual.status);
    if (residual.result) out << "  phi " << residual.result->phi << "  psi " << residual.result->psi;
    out << '\n';
  }
  out << "composite: " << (run.composite ? "complete" : "incomplete (infeasible residuals)")
      << '\n';
  return out.str();
}

}  // namespace scenopt
