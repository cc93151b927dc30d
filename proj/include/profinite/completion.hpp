#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "profinite/level_rings.hpp"

namespace profinite {

using IndexLabel = std::uint64_t;

/// Finite-support element of Z^(N); zero entries are never stored.
class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::map<IndexLabel, Integer> entries);
  /// Dense form: values[i] sits at label i + 1.
  static IntVector from_dense(std::span<const Integer> values);

  const std::map<IndexLabel, Integer>& entries() const noexcept { return entries_; }
  Integer at(IndexLabel i) const;
  bool is_zero() const noexcept { return entries_.empty(); }

  friend bool operator==(const IntVector&, const IntVector&) = default;

 private:
  std::map<IndexLabel, Integer> entries_;
};

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a);

/// Truncation of an element of Z_p^(N) to precision s; stores nonzero residues mod p^s only.
class PadicVector {
 public:
  PadicVector(Prime p, int precision, std::map<IndexLabel, Integer> entries = {});

  Prime prime() const noexcept { return prime_; }
  int precision() const noexcept { return precision_; }
  const std::map<IndexLabel, Integer>& entries() const noexcept { return entries_; }
  Residue at(IndexLabel i) const;
  bool is_zero() const noexcept { return entries_.empty(); }

  friend bool operator==(const PadicVector&, const PadicVector&) = default;

 private:
  Prime prime_;
  int precision_;
  std::map<IndexLabel, Integer> entries_;
};

PadicVector operator+(const PadicVector& a, const PadicVector& b);

/// Coordinatewise limit mod p^s. A coordinate converges when the last `min_tail` terms agree
/// modulo p^s; otherwise NotCauchy.
PadicVector complete(std::span<const IntVector> sequence, Prime p, int s, std::size_t min_tail = 2);

/// eta_{p,s}: coordinatewise reduction Z^(N) -> (Z/p^sZ)^(N).
PadicVector character(const IntVector& x, Prime p, int s);

/// Canonical integer representative in [0, p^s) of every coordinate.
IntVector density_witness(const PadicVector& target);

/// Enumeration of index labels as 1, 2, 3, ...: either the labels themselves or an explicit list.
class IndexOrder {
 public:
  static IndexOrder natural() { return IndexOrder(std::nullopt); }
  static IndexOrder enumerated(std::vector<IndexLabel> labels);

  /// 1-based position; throws OrderUndefined for labels outside the enumeration.
  std::uint64_t position(IndexLabel label) const;

 private:
  explicit IndexOrder(std::optional<std::map<IndexLabel, std::uint64_t>> positions)
      : positions_(std::move(positions)) {}

  std::optional<std::map<IndexLabel, std::uint64_t>> positions_;
};

/// p^-j for the first position j where x and y differ, 0 if they agree.
Rational baire_distance(const IntVector& x, const IntVector& y, Prime p,
                        const IndexOrder& order = IndexOrder::natural());
Rational baire_distance(const PadicVector& x, const PadicVector& y,
                        const IndexOrder& order = IndexOrder::natural());

}  // namespace profinite
