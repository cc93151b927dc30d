#include "profinite/level_rings.hpp"

#include <string>

namespace profinite {

namespace {

void require_level(int k) {
  if (k < 1) throw Error(Errc::LevelMismatch, "levels start at 1, got " + std::to_string(k));
}

void require_same_ring(const Residue& a, const Residue& b) {
  if (a.prime() != b.prime() || a.level() != b.level()) {
    throw Error(Errc::LevelMismatch, "operands live in different level rings");
  }
}

}  // namespace

Prime::Prime(std::uint64_t p) : p_(p) {
  if (p < 2) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  }
}

Residue::Residue(Prime p, int level, const Integer& value) : prime_(p), level_(level) {
  require_level(level);
  value_ = mod_floor(value, p.power(level));
}

std::ostream& operator<<(std::ostream& os, const Residue& r) {
  return os << r.value() << " mod " << r.prime().value() << "^" << r.level();
}

Residue add(const Residue& a, const Residue& b) {
  require_same_ring(a, b);
  return Residue(a.prime(), a.level(), a.value() + b.value());
}

Residue mul(const Residue& a, const Residue& b) {
  require_same_ring(a, b);
  return Residue(a.prime(), a.level(), a.value() * b.value());
}

Residue neg(const Residue& a) { return Residue(a.prime(), a.level(), -a.value()); }

Residue sub(const Residue& a, const Residue& b) {
  require_same_ring(a, b);
  return Residue(a.prime(), a.level(), a.value() - b.value());
}

Residue reduce(const Residue& a, int k) {
  require_level(k);
  if (k > a.level()) {
    throw Error(Errc::LevelMismatch,
                "cannot reduce level " + std::to_string(a.level()) + " to level " + std::to_string(k));
  }
  return Residue(a.prime(), k, a.value());
}

std::vector<Residue> fiber_enumerate(const Residue& a, int l) {
  if (l <= a.level()) {
    throw Error(Errc::LevelMismatch, "fiber target level must exceed " + std::to_string(a.level()));
  }
  const Integer step = a.modulus();
  const Integer count = a.prime().power(l - a.level());
  std::vector<Residue> out;
  for (Integer j = 0; j < count; ++j) out.emplace_back(a.prime(), l, a.value() + j * step);
  return out;
}

PadicApprox::PadicApprox(Prime p, std::vector<std::uint64_t> digits) : prime_(p), digits_(std::move(digits)) {
  if (digits_.empty()) throw Error(Errc::InvalidArgument, "precision must be at least 1");
  for (auto d : digits_) {
    if (d >= p.value()) throw Error(Errc::InvalidArgument, "digit " + std::to_string(d) + " out of range");
  }
}

PadicApprox PadicApprox::from_integer(Prime p, const Integer& n, int precision) {
  if (precision < 1) throw Error(Errc::InvalidArgument, "precision must be at least 1");
  Integer v = mod_floor(n, p.power(precision));
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(precision));
  for (auto& d : digits) {
    d = static_cast<std::uint64_t>(v % p.value());
    v /= p.value();
  }
  return PadicApprox(p, std::move(digits));
}

Integer PadicApprox::value() const {
  Integer v = 0;
  for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) v = v * prime_.value() + *it;
  return v;
}

PadicApprox PadicApprox::truncate(int k) const {
  if (k < 1 || k > precision()) {
    throw Error(Errc::PrecisionExceeded, "cannot truncate to " + std::to_string(k) + " digits");
  }
  return PadicApprox(prime_, std::vector<std::uint64_t>(digits_.begin(), digits_.begin() + k));
}

Residue project(const PadicApprox& x, int k) {
  require_level(k);
  if (k > x.precision()) {
    throw Error(Errc::PrecisionExceeded,
                "level " + std::to_string(k) + " exceeds precision " + std::to_string(x.precision()));
  }
  return Residue(x.prime(), k, x.truncate(k).value());
}

ResidueVector::ResidueVector(Prime p, int level, std::vector<Integer> values)
    : prime_(p), level_(level), values_(std::move(values)) {
  require_level(level);
  if (values_.empty()) throw Error(Errc::InvalidArgument, "residue vectors have dimension >= 1");
  const Integer m = p.power(level);
  for (auto& v : values_) v = mod_floor(v, m);
}

ResidueVector::ResidueVector(std::span<const Residue> entries)
    : prime_(entries.empty() ? Prime(2) : entries.front().prime()),
      level_(entries.empty() ? 1 : entries.front().level()) {
  if (entries.empty()) throw Error(Errc::InvalidArgument, "residue vectors have dimension >= 1");
  for (const auto& e : entries) {
    if (e.prime() != prime_ || e.level() != level_) {
      throw Error(Errc::LevelMismatch, "entries of a residue vector must share prime and level");
    }
    values_.push_back(e.value());
  }
}

std::ostream& operator<<(std::ostream& os, const ResidueVector& v) {
  os << "(";
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? ", " : "") << v.values()[i];
  return os << ") mod " << v.prime().value() << "^" << v.level();
}

ResidueVector reduce(const ResidueVector& v, int k) {
  require_level(k);
  if (k > v.level()) {
    throw Error(Errc::LevelMismatch,
                "cannot reduce level " + std::to_string(v.level()) + " to level " + std::to_string(k));
  }
  return ResidueVector(v.prime(), k, v.values());
}

ResidueVector project(std::span<const PadicApprox> x, int k) {
  if (x.empty()) throw Error(Errc::InvalidArgument, "empty point");
  std::vector<Integer> values;
  values.reserve(x.size());
  for (const auto& c : x) {
    if (c.prime() != x.front().prime()) throw Error(Errc::LevelMismatch, "coordinates over different primes");
    values.push_back(project(c, k).value());
  }
  return ResidueVector(x.front().prime(), k, std::move(values));
}

bool is_zero(const ResidueVector& v) {
  for (const auto& c : v.values()) {
    if (c != 0) return false;
  }
  return true;
}

std::vector<PadicApprox> lift_to_padic(const ResidueVector& v, int precision) {
  std::vector<PadicApprox> out;
  out.reserve(v.dim());
  for (const auto& c : v.values()) out.push_back(PadicApprox::from_integer(v.prime(), c, precision));
  return out;
}

}  // namespace profinite
