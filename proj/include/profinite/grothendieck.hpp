#pragma once

#include <functional>
#include <map>
#include <utility>

#include "profinite/loop_monoid.hpp"

namespace profinite {

/// Element of the Grothendieck group L(M_k, N_k): signed multiplicities of the nonzero
/// codomain values. Zero coordinates are never stored.
class GrothElem {
 public:
  using Coords = std::map<ResidueVector, Integer>;

  /// The zero element over this codomain.
  explicit GrothElem(const LevelCodomain& codomain);
  GrothElem(const LevelCodomain& codomain, Coords coords);

  Prime prime() const noexcept { return prime_; }
  int level() const noexcept { return level_; }
  int dim() const noexcept { return dim_; }
  const Coords& coords() const noexcept { return coords_; }
  Integer coordinate(const ResidueVector& v) const;
  bool is_zero() const noexcept { return coords_.empty(); }

  friend bool operator==(const GrothElem&, const GrothElem&) = default;

 private:
  GrothElem(Prime p, int level, int dim, Coords coords);
  friend GrothElem add(const GrothElem&, const GrothElem&);
  friend GrothElem negate(const GrothElem&);
  friend GrothElem embed(const LevelLoopClass&);
  friend GrothElem connecting(const GrothElem&, const LevelCodomain&);

  Prime prime_;
  int level_;
  int dim_;
  Coords coords_;
};

/// [c] in the group; injective because wedge composition cancels.
GrothElem embed(const LevelLoopClass& c);

GrothElem add(const GrothElem& x, const GrothElem& y);
GrothElem negate(const GrothElem& x);
GrothElem subtract(const GrothElem& x, const GrothElem& y);

inline GrothElem operator+(const GrothElem& x, const GrothElem& y) { return add(x, y); }
inline GrothElem operator-(const GrothElem& x) { return negate(x); }
inline GrothElem operator-(const GrothElem& x, const GrothElem& y) { return subtract(x, y); }

/// (a, b) with x = embed(a) - embed(b), a and b sharing no value.
std::pair<LevelLoopClass, LevelLoopClass> as_difference(const GrothElem& x, const LevelCodomain& codomain);

/// Extension of the class-level connecting map to the groups.
GrothElem connecting(const GrothElem& x, const LevelCodomain& target);

/// Rank of the free abelian group built on this codomain: the number of nonzero values.
std::size_t free_rank(const LevelCodomain& codomain);

/// A homomorphism L(M_k, N_k) -> Z, determined by its values on the singleton classes.
class GroupHom {
 public:
  explicit GroupHom(std::map<ResidueVector, Integer> weights) : weights_(std::move(weights)) {}

  Integer operator()(const GrothElem& x) const;
  const std::map<ResidueVector, Integer>& weights() const noexcept { return weights_; }

 private:
  std::map<ResidueVector, Integer> weights_;
};

using MonoidHom = std::function<Integer(const LevelLoopClass&)>;

/// The unique group homomorphism h^ with h^ o embed = h. Additivity of h is checked on the unit,
/// every pair of singleton generators, and every pair of classes with support <= check_support;
/// any failure throws NotHomomorphism.
GroupHom universal_extend(const MonoidHom& h, const LevelCodomain& codomain, std::size_t check_support = 2);

struct RankReport {
  std::size_t codomain_size;
  std::size_t computed_rank;
  /// card(N_k), the rank usually quoted for L(M_k, N_k); reported beside the computed one.
  std::size_t claimed_rank;
};

RankReport rank_report(const LevelCodomain& codomain);

}  // namespace profinite
