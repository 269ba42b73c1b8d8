#include "scenopt/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "scenopt/errors.hpp"

namespace scenopt {

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError("missing field '" + key + "' in " + where);
  return *it;
}

double require_number(const json& j, const std::string& key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_number()) throw ConfigError("field '" + key + "' in " + where + " must be a number");
  return v.get<double>();
}

std::vector<std::string> string_list(const json& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw ConfigError(what + " must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::map<std::string, double> goal_map(const json& v, const std::string& what) {
  if (!v.is_object()) throw ConfigError(what + " must map states to values");
  std::map<std::string, double> out;
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (!it.value().is_number()) throw ConfigError(what + "." + it.key() + " must be a number");
    out[it.key()] = it.value().get<double>();
  }
  return out;
}

}  // namespace

PortfolioInstance instance_from_json(const json& root) {
  const json& j = root.contains("instance") ? root.at("instance") : root;
  const std::string where = "instance";

  PortfolioInstance inst;
  inst.options = string_list(require(j, "options", where), "options");
  inst.states = string_list(require(j, "states", where), "states");
  const std::size_t n = inst.options.size();
  const std::size_t s = inst.states.size();

  // Growth: either verbatim percentages or the echo's exact fractions.
  const bool growth_pct = j.contains("growth_percent");
  const json& growth = growth_pct ? j.at("growth_percent")
                                  : require(j, "growth_fraction", where);
  inst.growth.assign(n, std::vector<double>(s));
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = require(growth, inst.options[i], "growth table");
    if (!row.is_array() || row.size() != s)
      throw ConfigError("growth row '" + inst.options[i] + "' must list one value per state");
    for (std::size_t k = 0; k < s; ++k) {
      const double v = row[k].get<double>();
      inst.growth[i][k] = growth_pct ? v / 100.0 : v;
    }
  }

  // Penalties: verbatim signed percentages (losses printed negative) or
  // exact fractions from the echo.
  const bool pen_pct = j.contains("penalty_percent");
  const json& pen = pen_pct ? j.at("penalty_percent") : require(j, "penalty_fraction", where);
  inst.penalties.assign(s, std::vector<std::vector<double>>(n, std::vector<double>(n + 1)));
  for (std::size_t k = 0; k < s; ++k) {
    const json& table = require(pen, inst.states[k], "penalty tables");
    if (!table.is_array() || table.size() != n)
      throw ConfigError("penalty table '" + inst.states[k] + "' must have one row per option");
    for (std::size_t i = 0; i < n; ++i) {
      const json& row = table[i];
      if (!row.is_array() || row.size() != n + 1)
        throw ConfigError("penalty table '" + inst.states[k] +
                          "' rows need transfer and withdrawal columns");
      for (std::size_t c = 0; c <= n; ++c) {
        const double v = row[c].get<double>();
        inst.penalties[k][i][c] = pen_pct ? std::fabs(v) / 100.0 : v;
      }
    }
  }

  const json& funds = require(j, "initial_funds", where);
  if (!funds.is_array() || funds.size() != n)
    throw ConfigError("initial_funds must list one amount per option");
  for (const auto& v : funds) inst.initial_funds.push_back(money::from_value(v.get<double>()));
  inst.initial_capital = money::from_value(require_number(j, "initial_capital", where));
  inst.min_withdrawal = money::from_value(require_number(j, "min_withdrawal", where));
  if (j.contains("max_withdrawal") && !j.at("max_withdrawal").is_null())
    inst.max_withdrawal = money::from_value(j.at("max_withdrawal").get<double>());
  if (j.contains("enforce_max_withdrawal"))
    inst.enforce_max_withdrawal = j.at("enforce_max_withdrawal").get<bool>();

  const json& goals = require(j, "goals_millions", where);
  const json& fund_goals = require(goals, "funds", "goals_millions");
  const json& wd_goals = require(goals, "withdrawals", "goals_millions");
  if (!fund_goals.is_array() || fund_goals.size() != 3 || !wd_goals.is_array() ||
      wd_goals.size() != 3)
    throw ConfigError("goals_millions sections must list stages 0..2");
  for (int t = 0; t < 3; ++t) {
    inst.fund_goals.push_back(goal_map(fund_goals[static_cast<std::size_t>(t)], "goals_millions.funds"));
    inst.withdrawal_goals.push_back(
        goal_map(wd_goals[static_cast<std::size_t>(t)], "goals_millions.withdrawals"));
  }

  inst.root_state = require(j, "root_state", where).get<std::string>();

  const json& trans = require(j, "transitions", where);
  Transitions adjacency;
  for (const auto& st : inst.states) {
    if (!trans.contains(st))
      throw ConfigError("transitions must cover state '" + st + "'");
    adjacency[st] = string_list(trans.at(st), "transitions." + st);
  }

  // Derive the three-stage tree: stage 1 holds the root's successors,
  // stage 2 the union of their successors in declared state order.
  auto it = adjacency.find(inst.root_state);
  if (it == adjacency.end())
    throw ConfigError("root_state '" + inst.root_state + "' has no transitions");
  const std::vector<std::string> stage1 = it->second;
  std::set<std::string> reachable;
  Transitions stage1_adj;
  for (const auto& st : stage1) {
    stage1_adj[st] = adjacency.at(st);
    for (const auto& nxt : stage1_adj[st]) reachable.insert(nxt);
  }
  std::vector<std::string> stage2;
  for (const auto& st : inst.states)
    if (reachable.count(st)) stage2.push_back(st);

  inst.tree = build_tree(3, {stage1, stage2}, {stage1_adj}, inst.root_state);
  inst.validate();
  return inst;
}

PortfolioInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instance file '" + path + "'");
  json root;
  try {
    in >> root;
  } catch (const json::parse_error& e) {
    throw ConfigError("instance file '" + path + "': " + e.what());
  }
  try {
    return instance_from_json(root);
  } catch (const InvalidInstanceError& e) {
    throw ConfigError("instance file '" + path + "': " + e.what());
  }
}

json instance_to_json(const PortfolioInstance& inst) {
  json j;
  j["options"] = inst.options;
  j["states"] = inst.states;
  json growth;
  for (std::size_t i = 0; i < inst.options.size(); ++i) growth[inst.options[i]] = inst.growth[i];
  j["growth_fraction"] = std::move(growth);
  json pen;
  for (std::size_t k = 0; k < inst.states.size(); ++k) pen[inst.states[k]] = inst.penalties[k];
  j["penalty_fraction"] = std::move(pen);
  json funds = json::array();
  for (Money m : inst.initial_funds) funds.push_back(money::to_units(m));
  j["initial_funds"] = std::move(funds);
  j["initial_capital"] = money::to_units(inst.initial_capital);
  j["min_withdrawal"] = money::to_units(inst.min_withdrawal);
  if (inst.max_withdrawal) j["max_withdrawal"] = money::to_units(*inst.max_withdrawal);
  j["enforce_max_withdrawal"] = inst.enforce_max_withdrawal;
  json fund_goals = json::array(), wd_goals = json::array();
  for (int t = 0; t < 3; ++t) {
    fund_goals.push_back(inst.fund_goals[static_cast<std::size_t>(t)]);
    wd_goals.push_back(inst.withdrawal_goals[static_cast<std::size_t>(t)]);
  }
  j["goals_millions"] = {{"funds", std::move(fund_goals)}, {"withdrawals", std::move(wd_goals)}};
  j["root_state"] = inst.root_state;
  json trans;
  // The tree only stores the realised slice of the relation; emit that.
  for (int s = 0; s < inst.tree.state_count(1); ++s) {
    const std::string& st = inst.tree.state_name(1, s);
    std::vector<std::string> tos;
    for (int idx : inst.tree.successors(1)[static_cast<std::size_t>(s)])
      tos.push_back(inst.tree.state_name(2, idx));
    trans[st] = std::move(tos);
  }
  {
    std::vector<std::string> tos;
    for (int idx : inst.tree.root_children()) tos.push_back(inst.tree.state_name(1, idx));
    trans[inst.root_state] = std::move(tos);
  }
  // States never realised in the window keep empty rows so the schema is
  // complete on reparse.
  for (const auto& st : inst.states)
    if (!trans.contains(st)) trans[st] = json::array();
  j["transitions"] = std::move(trans);
  return json{{"instance", std::move(j)}};
}

namespace {

std::pair<std::string, std::string> split_pattern(const std::string& key) {
  const auto at = key.find('@');
  if (at == std::string::npos) {
    if (key == "*") return {"*", "*"};
    throw ConfigError("preference key '" + key + "' must look like '<objective>@<path>'");
  }
  return {key.substr(0, at), key.substr(at + 1)};
}

std::vector<std::tuple<std::string, std::string, double>> override_map(const json& v,
                                                                       const std::string& what) {
  std::vector<std::tuple<std::string, std::string, double>> out;
  if (!v.is_object()) throw ConfigError(what + " must be an object");
  for (auto it = v.begin(); it != v.end(); ++it) {
    auto [obj, path] = split_pattern(it.key());
    if (!it.value().is_number()) throw ConfigError(what + "." + it.key() + " must be a number");
    out.emplace_back(obj, path, it.value().get<double>());
  }
  return out;
}

int specificity(const std::tuple<std::string, std::string, double>& o) {
  return (std::get<0>(o) != "*" ? 1 : 0) + (std::get<1>(o) != "*" ? 1 : 0);
}

}  // namespace

PreferenceOverrides preferences_from_json(const json& root) {
  PreferenceOverrides prefs;
  if (!root.contains("preferences")) return prefs;
  const json& j = root.at("preferences");
  if (j.contains("epsilon")) prefs.epsilon = j.at("epsilon").get<double>();
  if (j.contains("weights")) prefs.weights = override_map(j.at("weights"), "preferences.weights");
  if (j.contains("goals")) prefs.goals = override_map(j.at("goals"), "preferences.goals");
  return prefs;
}

PreferenceOverrides load_preferences(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instance file '" + path + "'");
  json root;
  try {
    in >> root;
  } catch (const json::parse_error& e) {
    throw ConfigError("instance file '" + path + "': " + e.what());
  }
  return preferences_from_json(root);
}

std::vector<std::tuple<std::string, std::string, double>> parse_override_list(
    const std::string& flag) {
  std::vector<std::tuple<std::string, std::string, double>> out;
  std::size_t pos = 0;
  while (pos < flag.size()) {
    auto comma = flag.find(',', pos);
    if (comma == std::string::npos) comma = flag.size();
    const std::string item = flag.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override '" + item + "' must look like '<objective>@<path>=<value>'");
    auto [obj, path] = split_pattern(item.substr(0, eq));
    try {
      out.emplace_back(obj, path, std::stod(item.substr(eq + 1)));
    } catch (const std::exception&) {
      throw ConfigError("override '" + item + "' has a bad numeric value");
    }
    pos = comma + 1;
  }
  return out;
}

void apply_overrides(ReferencePoint& ref, const MSMOModel& model, const PreferenceOverrides& o) {
  if (o.epsilon) {
    if (!(*o.epsilon > 0.0)) throw NonpositiveWeightError("epsilon override must be positive");
    ref.epsilon = *o.epsilon;
  }
  auto matches = [&](const std::tuple<std::string, std::string, double>& ov,
                     const MSMOModel::MetaRef& mref) {
    const std::string& obj = std::get<0>(ov);
    const std::string& path = std::get<1>(ov);
    if (obj != "*") {
      const std::string zname = "Z" + std::to_string(mref.objective + 1);
      const std::string num = std::to_string(mref.objective + 1);
      if (obj != zname && obj != num) return false;
    }
    return path == "*" || path == mref.label;
  };
  auto apply = [&](const std::vector<std::tuple<std::string, std::string, double>>& list,
                   std::vector<double>& target) {
    for (int pass = 0; pass <= 2; ++pass)
      for (const auto& ov : list) {
        if (specificity(ov) != pass) continue;
        for (std::size_t k = 0; k < model.meta_refs().size(); ++k)
          if (matches(ov, model.meta_refs()[k])) target[k] = std::get<2>(ov);
      }
  };
  apply(o.weights, ref.weights);
  apply(o.goals, ref.goals);
}

}  // namespace scenopt
