#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "scenopt/portfolio.hpp"

namespace scenopt {

/// Preference adjustments keyed by (objective pattern, path pattern) where
/// either side may be "*". Objectives match "Z<n>" or a 1-based number;
/// paths match the dot-joined state labels, e.g. "S2.S1".
struct PreferenceOverrides {
  std::optional<double> epsilon;
  std::vector<std::tuple<std::string, std::string, double>> weights;
  std::vector<std::tuple<std::string, std::string, double>> goals;
};

/// Loads the "instance" section of a config file. Throws ConfigError with
/// the offending field named.
PortfolioInstance load_instance(const std::string& path);

PortfolioInstance instance_from_json(const nlohmann::json& j);

/// Echo form of an instance; parsing it back yields a field-exact copy.
nlohmann::json instance_to_json(const PortfolioInstance& inst);

/// Reads the optional "preferences" section of a config file.
PreferenceOverrides preferences_from_json(const nlohmann::json& j);
PreferenceOverrides load_preferences(const std::string& path);

/// Parses a CLI override list like "Z1@*=2,Z2@S4.S5=3".
std::vector<std::tuple<std::string, std::string, double>> parse_override_list(
    const std::string& flag);

/// Applies overrides to a reference point, most specific pattern last.
void apply_overrides(ReferencePoint& ref, const MSMOModel& model, const PreferenceOverrides& o);

}  // namespace scenopt
