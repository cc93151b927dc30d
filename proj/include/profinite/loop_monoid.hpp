#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "profinite/manifold_tower.hpp"

namespace profinite {

/// N_k together with its distinguished zero y0_k.
class LevelCodomain {
 public:
  /// Uses the level set's base point as y0_k, or the origin when it has none.
  explicit LevelCodomain(LevelSet values);

  int level() const noexcept { return values_.level(); }
  Prime prime() const noexcept { return values_.prime(); }
  int dim() const noexcept { return values_.dim(); }
  const LevelSet& values() const noexcept { return values_; }
  const ResidueVector& zero() const noexcept { return zero_; }
  std::vector<ResidueVector> nonzero_values() const;

  /// N_k = {y0}: the loop monoid collapses to its unit.
  bool is_trivial() const noexcept { return values_.size() == 1; }

 private:
  LevelSet values_;
  ResidueVector zero_;
};

/// Orbit of a based finite-support map under based bijections of the domain:
/// the multiset of its nonzero values, stored sorted with multiplicities.
class LevelLoopClass {
 public:
  using Entry = std::pair<ResidueVector, std::uint64_t>;

  /// The unit class w0.
  explicit LevelLoopClass(const LevelCodomain& codomain);
  /// Values may repeat and carry zero multiplicities; they are merged and pruned.
  LevelLoopClass(const LevelCodomain& codomain, std::vector<Entry> entries);

  Prime prime() const noexcept { return prime_; }
  int level() const noexcept { return level_; }
  int dim() const noexcept { return dim_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  /// Total multiplicity, i.e. |supp f|.
  std::uint64_t size() const noexcept;
  bool is_unit() const noexcept { return entries_.empty(); }
  std::uint64_t multiplicity(const ResidueVector& v) const;

  friend bool operator==(const LevelLoopClass&, const LevelLoopClass&) = default;
  friend bool operator<(const LevelLoopClass& a, const LevelLoopClass& b);

 private:
  LevelLoopClass(Prime p, int level, int dim, std::vector<Entry> entries);
  friend LevelLoopClass wedge_compose(const LevelLoopClass&, const LevelLoopClass&);
  friend LevelLoopClass connecting(const LevelLoopClass&, const LevelCodomain&);

  Prime prime_;
  int level_;
  int dim_;
  std::vector<Entry> entries_;
};

using DomainLabel = std::uint64_t;

/// A based map on a countable label set, given by its support list.
/// Labels not listed map to y0; listed labels may also map to y0.
struct BasedFiniteMap {
  DomainLabel base_point = 0;
  std::vector<std::pair<DomainLabel, ResidueVector>> assignments;
};

/// Lazily produced support entries; std::nullopt ends the list.
using SupportStream = std::function<std::optional<std::pair<DomainLabel, ResidueVector>>()>;

/// Throws InfiniteSupport if more than `max_support` entries arrive, BasePointMoved if the base
/// label gets a nonzero value, PointNotInManifold for values outside N_k.
LevelLoopClass canonicalize(DomainLabel base_point, const SupportStream& support, const LevelCodomain& codomain,
                            std::uint64_t max_support = 1u << 20);
LevelLoopClass canonicalize(const BasedFiniteMap& f, const LevelCodomain& codomain,
                            std::uint64_t max_support = 1u << 20);

/// Multiset union. Throws LevelMismatch across levels or codomain shapes.
LevelLoopClass wedge_compose(const LevelLoopClass& a, const LevelLoopClass& b);

/// Applies pi^l_k to every value and drops those that become y0_k.
LevelLoopClass connecting(const LevelLoopClass& c, const LevelCodomain& target);

/// Number of classes with support at most min(domain_size - 1, max_support).
Integer class_count(std::size_t nonzero_values, std::size_t domain_size, std::size_t max_support);

/// Every class realisable on a based domain of `domain_size` points with support <= max_support,
/// in increasing order. Throws TooLarge above `max_classes`.
std::vector<LevelLoopClass> enumerate_classes(std::size_t domain_size, const LevelCodomain& codomain,
                                              std::size_t max_support, std::size_t max_classes = 200000);

/// Levels k0..K of loop classes commuting with the connecting maps.
class LoopClassTower {
 public:
  LoopClassTower(std::vector<LevelCodomain> codomains, std::vector<LevelLoopClass> classes);

  int first_level() const noexcept { return classes_.front().level(); }
  int last_level() const noexcept { return classes_.back().level(); }
  const LevelLoopClass& at(int k) const;
  const std::vector<LevelLoopClass>& classes() const noexcept { return classes_; }
  const std::vector<LevelCodomain>& codomains() const noexcept { return codomains_; }

  friend bool operator==(const LoopClassTower& a, const LoopClassTower& b) { return a.classes_ == b.classes_; }

 private:
  std::vector<LevelCodomain> codomains_;
  std::vector<LevelLoopClass> classes_;
};

/// Levelwise wedge composition.
LoopClassTower wedge_compose(const LoopClassTower& a, const LoopClassTower& b);

/// Codomains N_k0..N_K of a based manifold N.
std::vector<LevelCodomain> codomain_tower(const ClopenManifold& n, int first_level, int last_level);

/// The tower k -> class of pi_k o f for a based finite-support map with p-adic values in N.
LoopClassTower project_loop(DomainLabel base_point,
                            const std::vector<std::pair<DomainLabel, std::vector<PadicApprox>>>& values,
                            const std::vector<LevelCodomain>& codomains);

}  // namespace profinite
