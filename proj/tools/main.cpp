#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scenopt/config.hpp"
#include "scenopt/errors.hpp"
#include "scenopt/horizon.hpp"
#include "scenopt/lp.hpp"
#include "scenopt/model.hpp"
#include "scenopt/portfolio.hpp"
#include "scenopt/report.hpp"
#include "scenopt/scalarize.hpp"

namespace fs = std::filesystem;
using namespace scenopt;

namespace {

struct RunConfig {
  std::string instance_path;
  std::string mode = "three-stage";
  std::string output_dir;
  std::string weights_flag;
  std::string goals_flag;
  double epsilon = 0.0;  // 0 = keep config/default
  bool max_withdrawal = false;
  bool lp_export = false;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--instance", cfg.instance_path, "instance/preference config file")->required();
  cmd->add_option("--out", cfg.output_dir, "output directory (default $SCENOPT_OUT_DIR or ./out)");
  cmd->add_option("--epsilon", cfg.epsilon, "augmentation epsilon override");
  cmd->add_option("--weights", cfg.weights_flag,
                  "weight overrides, e.g. 'Z1@*=2,Z2@S4.S5=3' ('*' matches everything)");
  cmd->add_option("--goals", cfg.goals_flag, "goal overrides, same syntax as --weights");
  cmd->add_flag("--max-withdrawal", cfg.max_withdrawal, "enforce the per-stage withdrawal cap");
  cmd->add_flag("--lp-export", cfg.lp_export, "also write the scalarised model as an .lp file");
}

fs::path resolve_out(const RunConfig& cfg) {
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  if (const char* env = std::getenv("SCENOPT_OUT_DIR"); env && *env) return env;
  return "out";
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << content;
}

struct LoadedInstance {
  PortfolioInstance instance;
  PreferenceOverrides prefs;
};

LoadedInstance load(const RunConfig& cfg) {
  if (!fs::exists(cfg.instance_path))
    throw ConfigError("instance file '" + cfg.instance_path + "' does not exist");
  LoadedInstance loaded;
  loaded.instance = load_instance(cfg.instance_path);
  loaded.prefs = load_preferences(cfg.instance_path);
  loaded.instance.enforce_max_withdrawal |= cfg.max_withdrawal;
  if (cfg.epsilon != 0.0) loaded.prefs.epsilon = cfg.epsilon;
  if (!cfg.weights_flag.empty())
    for (auto& w : parse_override_list(cfg.weights_flag)) loaded.prefs.weights.push_back(w);
  if (!cfg.goals_flag.empty())
    for (auto& g : parse_override_list(cfg.goals_flag)) loaded.prefs.goals.push_back(g);
  return loaded;
}

ReferencePoint make_reference(const PortfolioInstance& inst, const MSMOModel& model,
                              const PreferenceOverrides& prefs, bool three_stage) {
  ReferencePoint ref =
      three_stage ? three_stage_reference(inst, model) : two_stage_reference(inst, model);
  apply_overrides(ref, model, prefs);
  return ref;
}

struct ThreeStageRun {
  MSMOModel model;
  ReferencePoint ref;
  LPProblem lp;
  SolveResult res;
};

ThreeStageRun solve_three_stage(const LoadedInstance& loaded) {
  ThreeStageRun run{build_three_stage(loaded.instance), {}, {}, {}};
  run.ref = make_reference(loaded.instance, run.model, loaded.prefs, true);
  run.lp = scalarize(run.model, run.ref);
  run.res = solve(run.lp);
  return run;
}

HorizonRun solve_moving_horizon(const LoadedInstance& loaded, const MSMOModel& three) {
  const MSMOModel first = prefix_model(three, 2);
  const ReferencePoint first_ref = make_reference(loaded.instance, first, loaded.prefs, false);
  std::vector<ReferencePoint> residual_refs = residual_references(loaded.instance);
  // Residual overrides are keyed by the residual models' own path labels.
  for (int s = 0; s < three.tree().state_count(1); ++s) {
    const MSMOModel residual =
        residual_model(three, std::vector<double>(static_cast<std::size_t>(three.stage_width(0)), 0.0),
                       three.tree().state_name(1, s));
    apply_overrides(residual_refs[static_cast<std::size_t>(s)], residual, loaded.prefs);
  }
  return run_moving_horizon(three, first_ref, residual_refs);
}

int cmd_solve(const RunConfig& cfg) {
  const LoadedInstance loaded = load(cfg);
  const fs::path out = resolve_out(cfg);
  fs::create_directories(out);
  write_file(out / "instance_echo.json", instance_to_json(loaded.instance).dump(2) + "\n");

  const MSMOModel three = build_three_stage(loaded.instance);

  if (cfg.mode == "three-stage") {
    ThreeStageRun run = solve_three_stage(loaded);
    if (cfg.lp_export) write_file(out / "model.lp", export_lp(run.lp));
    if (run.res.status != SolveResult::Status::Optimal) {
      std::cerr << "three-stage solve ended " << to_string(run.res.status) << "\n";
      return 2;
    }
    const ScalarizationResult sol = extract(run.model, run.lp, run.res);
    write_file(out / "solution.txt",
               solution_table(loaded.instance, run.model, sol.decision, "three-stage"));
    write_file(out / "objectives.csv", objectives_csv(run.model, sol.objective_matrix));
    write_file(out / "deviations.csv", deviations_csv(run.model, run.ref, sol));
    std::cout << "three-stage solution written to " << out.string() << "\n";
    return 0;
  }

  if (cfg.mode == "moving-horizon") {
    HorizonRun run;
    try {
      run = solve_moving_horizon(loaded, three);
    } catch (const FirstStageInfeasibleError& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    write_file(out / "residuals.txt", horizon_report(run));
    if (run.composite) {
      const ObjectiveMatrix matrix = evaluate(three, *run.composite);
      write_file(out / "solution.txt",
                 solution_table(loaded.instance, three, *run.composite, "moving-horizon"));
      write_file(out / "objectives.csv", objectives_csv(three, matrix));
    }
    std::cout << "moving-horizon run written to " << out.string() << "\n";
    return 0;
  }

  if (cfg.mode == "compare") {
    ThreeStageRun run = solve_three_stage(loaded);
    if (cfg.lp_export) write_file(out / "model.lp", export_lp(run.lp));
    if (run.res.status != SolveResult::Status::Optimal) {
      std::cerr << "three-stage solve ended " << to_string(run.res.status) << "\n";
      return 2;
    }
    const ScalarizationResult sol = extract(run.model, run.lp, run.res);
    write_file(out / "solution_three_stage.txt",
               solution_table(loaded.instance, run.model, sol.decision, "three-stage"));
    write_file(out / "objectives_three_stage.csv", objectives_csv(run.model, sol.objective_matrix));
    write_file(out / "deviations_three_stage.csv", deviations_csv(run.model, run.ref, sol));

    HorizonRun horizon;
    try {
      horizon = solve_moving_horizon(loaded, run.model);
    } catch (const FirstStageInfeasibleError& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    write_file(out / "residuals.txt", horizon_report(horizon));
    if (!horizon.composite) {
      std::cerr << "moving-horizon composite incomplete; comparison artifacts limited\n";
      return 0;
    }
    const ObjectiveMatrix mh = evaluate(run.model, *horizon.composite);
    write_file(out / "solution_moving_horizon.txt",
               solution_table(loaded.instance, run.model, *horizon.composite, "moving-horizon"));
    write_file(out / "objectives_moving_horizon.csv", objectives_csv(run.model, mh));
    write_file(out / "dominance.txt",
               dominance_report(sol.objective_matrix, mh, "three-stage", "moving-horizon",
                                run.model.senses()));
    const Money threshold = money::from_units(500'000);
    write_file(out / "robustness.txt",
               robustness_table(
                   {robustness_report(sol.objective_matrix, threshold, loaded.instance.initial_capital),
                    robustness_report(mh, threshold, loaded.instance.initial_capital)},
                   {"three-stage", "moving-horizon"}));
    write_file(out / "attainment.csv",
               export_attainment({sol.objective_matrix, mh}, {"three-stage", "moving-horizon"}));
    std::cout << "comparison written to " << out.string() << "\n";
    return 0;
  }

  std::cerr << "unknown mode '" << cfg.mode << "'\n";
  return 1;
}

int cmd_export_lp(const RunConfig& cfg) {
  const LoadedInstance loaded = load(cfg);
  const fs::path out = resolve_out(cfg);
  fs::create_directories(out);
  const bool three = cfg.mode != "two-stage";
  const MSMOModel model =
      three ? build_three_stage(loaded.instance) : build_two_stage(loaded.instance);
  const ReferencePoint ref = make_reference(loaded.instance, model, loaded.prefs, three);
  write_file(out / "model.lp", export_lp(scalarize(model, ref)));
  std::cout << "LP written to " << (out / "model.lp").string() << "\n";
  return 0;
}

int cmd_export_attainment(const RunConfig& cfg) {
  const LoadedInstance loaded = load(cfg);
  const fs::path out = resolve_out(cfg);
  fs::create_directories(out);
  ThreeStageRun run = solve_three_stage(loaded);
  if (run.res.status != SolveResult::Status::Optimal) {
    std::cerr << "three-stage solve ended " << to_string(run.res.status) << "\n";
    return 2;
  }
  const ScalarizationResult sol = extract(run.model, run.lp, run.res);
  HorizonRun horizon;
  try {
    horizon = solve_moving_horizon(loaded, run.model);
  } catch (const FirstStageInfeasibleError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  std::vector<ObjectiveMatrix> matrices{sol.objective_matrix};
  std::vector<std::string> labels{"three-stage"};
  if (horizon.composite) {
    matrices.push_back(evaluate(run.model, *horizon.composite));
    labels.push_back("moving-horizon");
  }
  write_file(out / "attainment.csv", export_attainment(matrices, labels));
  std::cout << "attainment data written to " << (out / "attainment.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-stage scenario LP solver and moving-horizon comparison"};
  app.require_subcommand(1);

  RunConfig cfg;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one structure via goal programming");
  add_common(solve_cmd, cfg);
  solve_cmd->add_option("--mode", cfg.mode, "three-stage | moving-horizon | compare")
      ->check(CLI::IsMember({"three-stage", "moving-horizon", "compare"}));

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "run the two-stage moving-horizon strategy");
  add_common(simulate_cmd, cfg);

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "solve both structures and compare the solutions");
  add_common(compare_cmd, cfg);

  CLI::App* export_lp_cmd = app.add_subcommand("export-lp", "write the scalarised model LP text");
  add_common(export_lp_cmd, cfg);
  export_lp_cmd->add_option("--mode", cfg.mode, "three-stage | two-stage")
      ->check(CLI::IsMember({"three-stage", "two-stage"}));

  CLI::App* attain_cmd =
      app.add_subcommand("export-attainment", "write per-scenario objective data for both solutions");
  add_common(attain_cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(cfg);
    if (simulate_cmd->parsed()) {
      cfg.mode = "moving-horizon";
      return cmd_solve(cfg);
    }
    if (compare_cmd->parsed()) {
      cfg.mode = "compare";
      return cmd_solve(cfg);
    }
    if (export_lp_cmd->parsed()) return cmd_export_lp(cfg);
    if (attain_cmd->parsed()) return cmd_export_attainment(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
