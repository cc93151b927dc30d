#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "profinite/errors.hpp"
#include "profinite/integer.hpp"

namespace profinite {

/// A rational prime, checked by trial division at construction.
class Prime {
 public:
  explicit Prime(std::uint64_t p);

  std::uint64_t value() const noexcept { return p_; }
  Integer power(int k) const { return ipow(p_, static_cast<unsigned>(k)); }

  friend bool operator==(Prime, Prime) = default;

 private:
  std::uint64_t p_;
};

/// Element of the level ring S_{p^k} = Z/p^kZ, stored as its representative in [0, p^k).
class Residue {
 public:
  /// Any integer is accepted and reduced to the canonical representative.
  Residue(Prime p, int level, const Integer& value);

  Prime prime() const noexcept { return prime_; }
  int level() const noexcept { return level_; }
  const Integer& value() const noexcept { return value_; }
  Integer modulus() const { return prime_.power(level_); }

  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.prime_ == b.prime_ && a.level_ == b.level_ && a.value_ == b.value_;
  }

 private:
  Prime prime_;
  int level_;
  Integer value_;
};

std::ostream& operator<<(std::ostream& os, const Residue& r);

Residue add(const Residue& a, const Residue& b);
Residue mul(const Residue& a, const Residue& b);
Residue neg(const Residue& a);
Residue sub(const Residue& a, const Residue& b);

inline Residue operator+(const Residue& a, const Residue& b) { return add(a, b); }
inline Residue operator*(const Residue& a, const Residue& b) { return mul(a, b); }
inline Residue operator-(const Residue& a) { return neg(a); }
inline Residue operator-(const Residue& a, const Residue& b) { return sub(a, b); }

/// The connecting homomorphism S_{p^l} -> S_{p^k}, k <= l.
Residue reduce(const Residue& a, int k);

/// All residues at level l lying over `a`, in increasing order. There are p^(l-k) of them.
std::vector<Residue> fiber_enumerate(const Residue& a, int l);

/// Truncated p-adic integer: K base-p digits d_0 ... d_{K-1}, least significant first.
class PadicApprox {
 public:
  PadicApprox(Prime p, std::vector<std::uint64_t> digits);

  /// Digits of `n` (any sign) viewed in Z_p, truncated to `precision` digits.
  static PadicApprox from_integer(Prime p, const Integer& n, int precision);

  Prime prime() const noexcept { return prime_; }
  int precision() const noexcept { return static_cast<int>(digits_.size()); }
  std::span<const std::uint64_t> digits() const noexcept { return digits_; }

  /// Representative in [0, p^K).
  Integer value() const;
  PadicApprox truncate(int k) const;

  friend bool operator==(const PadicApprox&, const PadicApprox&) = default;

 private:
  Prime prime_;
  std::vector<std::uint64_t> digits_;
};

/// pi_k : Z_p -> S_{p^k}. Throws PrecisionExceeded when k > precision.
Residue project(const PadicApprox& x, int k);

/// A point of (Z/p^kZ)^m. All coordinates share prime and level.
class ResidueVector {
 public:
  ResidueVector(Prime p, int level, std::vector<Integer> values);
  explicit ResidueVector(std::span<const Residue> entries);

  Prime prime() const noexcept { return prime_; }
  int level() const noexcept { return level_; }
  std::size_t dim() const noexcept { return values_.size(); }
  const std::vector<Integer>& values() const noexcept { return values_; }
  Residue operator[](std::size_t i) const { return Residue(prime_, level_, values_[i]); }

  friend bool operator==(const ResidueVector& a, const ResidueVector& b) {
    return a.prime_ == b.prime_ && a.level_ == b.level_ && a.values_ == b.values_;
  }
  /// Lexicographic on coordinates; only meaningful between vectors of one (prime, level, dim).
  friend bool operator<(const ResidueVector& a, const ResidueVector& b) { return a.values_ < b.values_; }

 private:
  Prime prime_;
  int level_;
  std::vector<Integer> values_;
};

std::ostream& operator<<(std::ostream& os, const ResidueVector& v);

ResidueVector reduce(const ResidueVector& v, int k);
ResidueVector project(std::span<const PadicApprox> x, int k);
bool is_zero(const ResidueVector& v);

/// Digit-tower of precision `precision` whose value is the given residue representative.
std::vector<PadicApprox> lift_to_padic(const ResidueVector& v, int precision);

}  // namespace profinite
