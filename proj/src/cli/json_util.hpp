#pragma once

#include <json.hpp>

#include "profinite/function_tower.hpp"
#include "profinite/loop_monoid.hpp"

namespace profinite::cli {

inline nlohmann::json point_json(const ResidueVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : v.values()) out.push_back(to_string(c));
  return out;
}

inline nlohmann::json level_map_json(const LevelMap& f) {
  nlohmann::json domain = nlohmann::json::array();
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t i = 0; i < f.domain().size(); ++i) {
    domain.push_back(point_json(f.domain()[i]));
    table.push_back({point_json(f.domain()[i]), point_json(f.codomain()[f.table()[i]])});
  }
  return {{"level", f.level()}, {"domain", domain}, {"table", table}};
}

inline nlohmann::json class_json(const LevelLoopClass& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [v, m] : c.entries()) out.push_back({point_json(v), m});
  return out;
}

}  // namespace profinite::cli
