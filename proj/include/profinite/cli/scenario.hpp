#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "profinite/manifold_tower.hpp"

namespace profinite::cli {

inline constexpr const char* kArtifactName = "profinite";
inline constexpr const char* kArtifactVersion = "1.0.0";

/// Base-p digits, least significant first.
using Digits = std::vector<std::uint64_t>;

struct BallConfig {
  std::vector<Digits> center;  // one digit list per coordinate
  int radius_exp = 0;
};

struct ManifoldConfig {
  int dim = 1;
  std::vector<BallConfig> balls;
  std::vector<Digits> base_point;  // filled with a default when absent from the file
};

struct Bounds {
  std::uint64_t samples = 50;
  std::size_t domain_size = 4;
  std::size_t max_support = 2;
  std::size_t max_classes = 200000;
  std::size_t max_perm_points = 8;
  int loop_level = 1;
};

struct CompleteConfig {
  int precision = 3;
  std::vector<std::vector<Integer>> vectors;  // dense, index labels start at 1
};

struct Scenario {
  std::uint64_t prime = 2;
  int depth = 3;
  std::uint64_t seed = 0;
  ManifoldConfig manifold;
  ManifoldConfig codomain;
  Bounds bounds;
  CompleteConfig complete;
  /// Optional fixture: image index lists of a permutation tower, one per level from 1.
  std::optional<std::vector<std::vector<std::size_t>>> perm_tower;
};

/// p = 2, M = Z_2 based at 0, K = 3, N = Z_2, geometric partial sums for `complete`.
Scenario default_scenario();

/// Missing keys take their defaults; unknown keys, wrong types and invalid geometry throw
/// ConfigInvalid.
Scenario parse_scenario(const nlohmann::json& config);
Scenario load_scenario(const std::string& path);

/// Fully expanded form with sorted keys; big integers are decimal strings.
nlohmann::json to_json(const Scenario& s);
/// FNV-1a-64 of the compact dump of to_json, as 16 hex digits.
std::string scenario_hash(const Scenario& s);

ClopenManifold build_manifold(const Scenario& s);
ClopenManifold build_codomain(const Scenario& s);

/// Geometric partial sums sum_{n<N} (p-1) p^n, N = 1..precision+3, one coordinate.
std::vector<std::vector<Integer>> geometric_fixture(std::uint64_t p, int precision);

}  // namespace profinite::cli
