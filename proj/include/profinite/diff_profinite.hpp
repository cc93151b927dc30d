#pragma once

#include <cstdint>
#include <vector>

#include "profinite/function_tower.hpp"
#include "profinite/manifold_tower.hpp"

namespace profinite {

/// A bijection of M_k onto itself, stored as image indices into the sorted domain.
class LevelPerm {
 public:
  LevelPerm(LevelSet domain, std::vector<std::size_t> image);

  static LevelPerm identity(const LevelSet& domain);

  int level() const noexcept { return domain_.level(); }
  const LevelSet& domain() const noexcept { return domain_; }
  const std::vector<std::size_t>& image() const noexcept { return image_; }
  std::size_t size() const noexcept { return image_.size(); }

  const ResidueVector& operator()(const ResidueVector& x) const;
  LevelMap as_map() const { return LevelMap(domain_, domain_, image_); }

  friend bool operator==(const LevelPerm& a, const LevelPerm& b) {
    return a.image_ == b.image_ && a.domain_ == b.domain_;
  }

 private:
  LevelSet domain_;
  std::vector<std::size_t> image_;
};

/// a o b (apply b first).
LevelPerm compose(const LevelPerm& a, const LevelPerm& b);
LevelPerm invert(const LevelPerm& a);

/// Whether the level-l permutation maps fibres over M_k onto fibres and induces `coarse` there.
bool reduces_to(const LevelPerm& fine, const LevelPerm& coarse);

/// Depth-K truncation of an element of Diff_w(M) = pr-lim Hom(M_k).
class PermTower {
 public:
  /// Throws TowerIncompatible when some pair of levels fails pi^l_k o s_l = s_k o pi^l_k.
  explicit PermTower(std::vector<LevelPerm> levels);

  static PermTower identity(const ClopenManifold& m, int depth);

  int depth() const noexcept { return static_cast<int>(levels_.size()); }
  const LevelPerm& at(int k) const { return levels_.at(static_cast<std::size_t>(k - 1)); }
  const std::vector<LevelPerm>& levels() const noexcept { return levels_; }

  friend bool operator==(const PermTower&, const PermTower&) = default;

 private:
  std::vector<LevelPerm> levels_;
};

PermTower compose(const PermTower& a, const PermTower& b);
PermTower invert(const PermTower& a);

/// A permutation tower fixing the image of the marked point at every level.
class BasedPermTower {
 public:
  /// Throws BasePointMoved if some level moves the base point image.
  explicit BasedPermTower(PermTower tower);

  const PermTower& tower() const noexcept { return tower_; }

  friend bool operator==(const BasedPermTower&, const BasedPermTower&) = default;

 private:
  PermTower tower_;
};

BasedPermTower compose(const BasedPermTower& a, const BasedPermTower& b);
BasedPermTower invert(const BasedPermTower& a);

/// Uniformly random lift of sigma_k to level l: each fibre over x is sent bijectively onto the
/// fibre over sigma_k(x). Fibres are shuffled with one substream per domain point of M_k,
/// seeded by derive_seed(seed, index), so the result depends only on (input, seed).
/// Throws UnequalFibers if some x and sigma_k(x) have fibres of different size.
LevelPerm random_lift(const ClopenManifold& m, const LevelPerm& sigma, int l, std::uint64_t seed);

/// Uniform random permutation of a finite level set.
LevelPerm random_level_perm(const LevelSet& domain, std::uint64_t seed);

/// Random tower of the given depth. Level 1 and every lift only match points whose subtrees
/// down to `depth` are isomorphic, so every generated prefix extends.
PermTower random_tower(const ClopenManifold& m, int depth, std::uint64_t seed);

/// Random based tower (requires a marked point).
BasedPermTower random_based_tower(const ClopenManifold& m, int depth, std::uint64_t seed);

/// Every element of Hom(M_k); throws TooLarge above `max_points` points.
std::vector<LevelPerm> enumerate_level_perms(const LevelSet& domain, std::size_t max_points = 8);

struct GroupOrder {
  int level;
  Integer points;  // n_k = card(M_k)
  Integer order;   // n_k!
  /// Largest b with p^b <= n_k, and whether (p^b)! | n_k! was confirmed by division.
  int factorial_exponent;
  bool factorial_divides;
  /// card(M_k) divisible by p^e for e = m * min_i(k - s_i).
  int verified_exponent;
  bool verified_divides;
  /// The literal reading a = sum_i (k + s_i); reported, not asserted.
  int literal_exponent;
  bool literal_card_divides;
  bool literal_factorial_divides;
};

/// |Hom(M_k)| = n_k! together with the divisibility certificates above.
GroupOrder group_order(const ClopenManifold& m, int k);

/// 0 when all levels agree, otherwise p^-j for the first disagreeing level j.
Rational weak_distance(const PermTower& a, const PermTower& b);

}  // namespace profinite
