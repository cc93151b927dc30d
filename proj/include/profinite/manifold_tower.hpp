#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "profinite/level_rings.hpp"

namespace profinite {

/// Closed ball {x : |x - center| <= p^-radius_exp} in Z_p^m.
struct Ball {
  std::vector<PadicApprox> center;
  int radius_exp = 0;
};

/// Compact clopen subset of Z_p^m given as a finite disjoint union of balls,
/// with an optional marked point.
class ClopenManifold {
 public:
  ClopenManifold(Prime p, int dim, std::vector<Ball> balls,
                 std::optional<std::vector<PadicApprox>> base_point = std::nullopt);

  /// Z_p^m itself, based at the origin with the given precision.
  static ClopenManifold whole(Prime p, int dim, int base_precision = 64);

  Prime prime() const noexcept { return prime_; }
  int dim() const noexcept { return dim_; }
  const std::vector<Ball>& balls() const noexcept { return balls_; }
  const std::optional<std::vector<PadicApprox>>& base_point() const noexcept { return base_point_; }

  /// Smallest level at which every ball is resolved, i.e. max radius exponent.
  int resolution() const noexcept;
  /// Highest level at which the marked point is known; unbounded without one.
  int max_level() const noexcept;

  /// Whether a level-k point is the image of some point of the manifold.
  bool covers(const ResidueVector& x) const;

 private:
  Prime prime_;
  int dim_;
  std::vector<Ball> balls_;
  std::optional<std::vector<PadicApprox>> base_point_;
};

/// The finite set M_k with sorted, duplicate-free points.
class LevelSet {
 public:
  LevelSet(Prime p, int level, int dim, std::vector<ResidueVector> points,
           std::optional<ResidueVector> base_point = std::nullopt);

  Prime prime() const noexcept { return prime_; }
  int level() const noexcept { return level_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_->size(); }
  const std::vector<ResidueVector>& points() const noexcept { return *points_; }
  const ResidueVector& operator[](std::size_t i) const { return (*points_)[i]; }
  const std::optional<ResidueVector>& base_point() const noexcept { return base_point_; }

  std::optional<std::size_t> index_of(const ResidueVector& x) const;
  bool contains(const ResidueVector& x) const { return index_of(x).has_value(); }

  friend bool operator==(const LevelSet& a, const LevelSet& b) {
    return a.prime_ == b.prime_ && a.level_ == b.level_ && a.dim_ == b.dim_ && a.base_point_ == b.base_point_ &&
           (a.points_ == b.points_ || *a.points_ == *b.points_);
  }

 private:
  Prime prime_;
  int level_;
  int dim_;
  // Immutable and shared between copies.
  std::shared_ptr<const std::vector<ResidueVector>> points_;
  std::optional<ResidueVector> base_point_;
};

/// All residues x with every coordinate in [0, p^k); used for codomains such as N = Z_p^n.
LevelSet full_level_set(Prime p, int level, int dim);

LevelSet discretize(const ClopenManifold& m, int k);

/// Closed form sum_i p^(m(k - s_i)). Throws LevelTooSmall below the resolution.
Integer cardinality(const ClopenManifold& m, int k);

/// Points of M_l over x in M_k, sorted.
std::vector<ResidueVector> fiber(const ClopenManifold& m, const ResidueVector& x, int l);

/// Exponent e = m * min_i (k - s_i) with card(M_k) divisible by p^e.
int verified_divisibility_exponent(const ClopenManifold& m, int k);

/// a = sum_i (k - max{l : p^l <= p^-s_i}) = sum_i (k + s_i), read literally.
int literal_divisibility_exponent(const ClopenManifold& m, int k);

/// Reduction of every point of `fine` to the level of `coarse`, as an index table into `coarse`.
std::vector<std::size_t> connecting_indices(const LevelSet& fine, const LevelSet& coarse);

}  // namespace profinite
