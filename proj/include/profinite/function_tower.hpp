#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "profinite/manifold_tower.hpp"

namespace profinite {

/// A function M -> N sampled pointwise on truncated p-adic inputs.
using PointOracle = std::function<std::vector<PadicApprox>(std::span<const PadicApprox>)>;

/// An integer-valued function on the nonnegative integers (for Mahler expansions).
using IntegerOracle = std::function<Integer(const Integer&)>;

/// f_k : M_k -> N_k as an index table: table[i] is the codomain index of f(domain[i]).
class LevelMap {
 public:
  LevelMap(LevelSet domain, LevelSet codomain, std::vector<std::size_t> table);

  static LevelMap identity(const LevelSet& domain);

  int level() const noexcept { return domain_.level(); }
  const LevelSet& domain() const noexcept { return domain_; }
  const LevelSet& codomain() const noexcept { return codomain_; }
  const std::vector<std::size_t>& table() const noexcept { return table_; }

  const ResidueVector& operator()(const ResidueVector& x) const;

  friend bool operator==(const LevelMap&, const LevelMap&) = default;

 private:
  LevelSet domain_;
  LevelSet codomain_;
  std::vector<std::size_t> table_;
};

/// f_k o g_k. Throws DomainMismatch when g's codomain is not f's domain.
LevelMap compose(const LevelMap& f, const LevelMap& g);

/// Whether pi^l_k o f_l == f_k o pi^l_k on every point of the finer domain.
bool commutes_with_projection(const LevelMap& fine, const LevelMap& coarse);

/// Levels 1..K of a compatible family of level maps over fixed (M, N).
class MapTower {
 public:
  /// Validates every pair of levels; throws TowerIncompatible on the first failure.
  explicit MapTower(std::vector<LevelMap> levels);

  static MapTower identity(const ClopenManifold& m, int depth);

  int depth() const noexcept { return static_cast<int>(levels_.size()); }
  const LevelMap& at(int k) const { return levels_.at(static_cast<std::size_t>(k - 1)); }
  const std::vector<LevelMap>& levels() const noexcept { return levels_; }

  friend bool operator==(const MapTower&, const MapTower&) = default;

 private:
  std::vector<LevelMap> levels_;
};

/// f_k := pi_k o f, sampling every point of M at `sample_level` (>= k; defaults to k + 1).
/// Throws NotLevelCompatible when two samples in one level-k fibre disagree modulo p^k.
LevelMap project_function(const PointOracle& f, const ClopenManifold& domain, const ClopenManifold& codomain,
                          int k, std::optional<int> sample_level = std::nullopt);

/// project_function at levels 1..depth.
MapTower project_tower(const PointOracle& f, const ClopenManifold& domain, const ClopenManifold& codomain,
                       int depth, int sample_offset = 1);

MapTower compose_towers(const MapTower& f, const MapTower& g);

struct MahlerSeries {
  Prime prime;
  int precision;
  std::vector<PadicApprox> coefficients;

  /// Largest index m with a stored coefficient.
  int degree() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
  /// Digits of the argument needed to evaluate exactly: precision + v_p(degree!).
  int guard_precision() const;
};

/// a_m = sum_j (-1)^(m-j) C(m,j) f(j) mod p^K for m = 0..max_index.
MahlerSeries mahler_coefficients(const IntegerOracle& f, Prime p, int max_index, int precision);

/// Same, for a p-adic point oracle queried at the integers 0..max_index.
MahlerSeries mahler_coefficients(const std::function<PadicApprox(const PadicApprox&)>& f, Prime p,
                                 int max_index, int precision);

/// sum_m a_m C(x, m), returned at the series precision.
PadicApprox mahler_eval(const MahlerSeries& s, const PadicApprox& x);

/// pi_k of the polynomial sum_i a_i x^i on a one-dimensional M, computed as sum_i (a_i)_k x(k)^i.
LevelMap project_polynomial(std::span<const PadicApprox> coeffs, const ClopenManifold& m, int k);

}  // namespace profinite
