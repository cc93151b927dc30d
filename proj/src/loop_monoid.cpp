#include "profinite/loop_monoid.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace profinite {

namespace {

std::vector<LevelLoopClass::Entry> normalized(std::vector<LevelLoopClass::Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<LevelLoopClass::Entry> out;
  for (auto& e : entries) {
    if (e.second == 0) continue;
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
    } else {
      out.push_back(std::move(e));
    }
  }
  return out;
}

void require_same_monoid(const LevelLoopClass& a, const LevelLoopClass& b) {
  if (a.prime() != b.prime() || a.level() != b.level() || a.dim() != b.dim()) {
    throw Error(Errc::LevelMismatch, "loop classes belong to different monoids");
  }
}

}  // namespace

LevelCodomain::LevelCodomain(LevelSet values)
    : values_(std::move(values)),
      zero_(values_.base_point().value_or(ResidueVector(values_.prime(), values_.level(),
                                                        std::vector<Integer>(values_.dim(), 0)))) {
  if (!values_.contains(zero_)) throw Error(Errc::PointNotInManifold, "codomain does not contain its zero");
}

std::vector<ResidueVector> LevelCodomain::nonzero_values() const {
  std::vector<ResidueVector> out;
  for (const auto& v : values_.points()) {
    if (!(v == zero_)) out.push_back(v);
  }
  return out;
}

LevelLoopClass::LevelLoopClass(const LevelCodomain& codomain)
    : LevelLoopClass(codomain.prime(), codomain.level(), codomain.dim(), {}) {}

LevelLoopClass::LevelLoopClass(const LevelCodomain& codomain, std::vector<Entry> entries)
    : LevelLoopClass(codomain.prime(), codomain.level(), codomain.dim(), normalized(std::move(entries))) {
  for (const auto& [v, mult] : entries_) {
    if (v == codomain.zero()) throw Error(Errc::InvalidArgument, "loop classes never record the zero value");
    if (!codomain.values().contains(v)) throw Error(Errc::PointNotInManifold, "value outside the codomain");
  }
}

LevelLoopClass::LevelLoopClass(Prime p, int level, int dim, std::vector<Entry> entries)
    : prime_(p), level_(level), dim_(dim), entries_(std::move(entries)) {}

std::uint64_t LevelLoopClass::size() const noexcept {
  std::uint64_t n = 0;
  for (const auto& e : entries_) n += e.second;
  return n;
}

std::uint64_t LevelLoopClass::multiplicity(const ResidueVector& v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Entry& e, const ResidueVector& x) { return e.first < x; });
  return (it != entries_.end() && it->first == v) ? it->second : 0;
}

bool operator<(const LevelLoopClass& a, const LevelLoopClass& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.entries_ < b.entries_;
}

LevelLoopClass canonicalize(DomainLabel base_point, const SupportStream& support, const LevelCodomain& codomain,
                            std::uint64_t max_support) {
  std::map<DomainLabel, ResidueVector> seen;
  std::uint64_t listed = 0;
  while (auto entry = support()) {
    if (++listed > max_support) {
      throw Error(Errc::InfiniteSupport, "support list exceeds " + std::to_string(max_support) + " entries");
    }
    auto& [label, value] = *entry;
    if (value.level() != codomain.level() || value.prime() != codomain.prime()) {
      throw Error(Errc::LevelMismatch, "value is not a level-" + std::to_string(codomain.level()) + " point");
    }
    if (!codomain.values().contains(value)) throw Error(Errc::PointNotInManifold, "value outside the codomain");
    if (label == base_point && !(value == codomain.zero())) {
      throw Error(Errc::BasePointMoved, "the base point must map to the codomain zero");
    }
    auto [it, inserted] = seen.try_emplace(label, value);
    if (!inserted && !(it->second == value)) {
      throw Error(Errc::InvalidArgument, "label " + std::to_string(label) + " is assigned two values");
    }
  }
  std::vector<LevelLoopClass::Entry> entries;
  for (auto& [label, value] : seen) {
    if (!(value == codomain.zero())) entries.emplace_back(std::move(value), 1);
  }
  return LevelLoopClass(codomain, std::move(entries));
}

LevelLoopClass canonicalize(const BasedFiniteMap& f, const LevelCodomain& codomain, std::uint64_t max_support) {
  std::size_t next = 0;
  SupportStream stream = [&]() -> std::optional<std::pair<DomainLabel, ResidueVector>> {
    if (next == f.assignments.size()) return std::nullopt;
    return f.assignments[next++];
  };
  return canonicalize(f.base_point, stream, codomain, max_support);
}

LevelLoopClass wedge_compose(const LevelLoopClass& a, const LevelLoopClass& b) {
  require_same_monoid(a, b);
  std::vector<LevelLoopClass::Entry> entries = a.entries();
  entries.insert(entries.end(), b.entries().begin(), b.entries().end());
  return LevelLoopClass(a.prime(), a.level(), a.dim(), normalized(std::move(entries)));
}

LevelLoopClass connecting(const LevelLoopClass& c, const LevelCodomain& target) {
  if (target.level() > c.level() || target.prime() != c.prime() || target.dim() != c.dim()) {
    throw Error(Errc::LevelMismatch, "no connecting map from level " + std::to_string(c.level()) + " to level " +
                                         std::to_string(target.level()));
  }
  std::vector<LevelLoopClass::Entry> entries;
  for (const auto& [v, mult] : c.entries()) {
    ResidueVector down = reduce(v, target.level());
    if (!target.values().contains(down)) throw Error(Errc::PointNotInManifold, "value leaves the target codomain");
    if (!(down == target.zero())) entries.emplace_back(std::move(down), mult);
  }
  return LevelLoopClass(target.prime(), target.level(), target.dim(), normalized(std::move(entries)));
}

Integer class_count(std::size_t nonzero_values, std::size_t domain_size, std::size_t max_support) {
  if (domain_size == 0) return 0;
  const std::size_t top = std::min(domain_size - 1, max_support);
  Integer total = 0;
  for (std::size_t j = 0; j <= top; ++j) {
    total += binomial(Integer(nonzero_values + j) - 1, static_cast<unsigned>(j));
  }
  return total;
}

std::vector<LevelLoopClass> enumerate_classes(std::size_t domain_size, const LevelCodomain& codomain,
                                              std::size_t max_support, std::size_t max_classes) {
  if (domain_size == 0) throw Error(Errc::InvalidArgument, "a based domain has at least its base point");
  const auto values = codomain.nonzero_values();
  if (class_count(values.size(), domain_size, max_support) > max_classes) {
    throw Error(Errc::TooLarge, "class enumeration exceeds " + std::to_string(max_classes));
  }
  const std::size_t top = std::min(domain_size - 1, max_support);
  std::vector<LevelLoopClass> out;
  out.emplace_back(codomain);
  if (values.empty()) return out;
  // Nondecreasing index sequences of each length j enumerate multisets of size j.
  for (std::size_t j = 1; j <= top; ++j) {
    std::vector<std::size_t> idx(j, 0);
    while (true) {
      std::vector<LevelLoopClass::Entry> entries;
      for (auto i : idx) entries.emplace_back(values[i], 1);
      out.emplace_back(codomain, std::move(entries));
      std::size_t pos = j;
      while (pos > 0 && idx[pos - 1] == values.size() - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      std::fill(idx.begin() + static_cast<std::ptrdiff_t>(pos), idx.end(), idx[pos - 1]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LoopClassTower::LoopClassTower(std::vector<LevelCodomain> codomains, std::vector<LevelLoopClass> classes)
    : codomains_(std::move(codomains)), classes_(std::move(classes)) {
  if (classes_.empty() || classes_.size() != codomains_.size()) {
    throw Error(Errc::InvalidArgument, "a loop tower needs one codomain per level");
  }
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i].level() != codomains_[i].level() || classes_[i].level() != classes_[0].level() + static_cast<int>(i)) {
      throw Error(Errc::TowerIncompatible, "loop tower levels must be consecutive");
    }
  }
  for (std::size_t l = 1; l < classes_.size(); ++l) {
    for (std::size_t k = 0; k < l; ++k) {
      if (!(connecting(classes_[l], codomains_[k]) == classes_[k])) {
        throw Error(Errc::TowerIncompatible, "level " + std::to_string(classes_[l].level()) +
                                                 " does not connect to level " + std::to_string(classes_[k].level()));
      }
    }
  }
}

const LevelLoopClass& LoopClassTower::at(int k) const {
  if (k < first_level() || k > last_level()) throw Error(Errc::LevelMismatch, "level outside the tower");
  return classes_[static_cast<std::size_t>(k - first_level())];
}

LoopClassTower wedge_compose(const LoopClassTower& a, const LoopClassTower& b) {
  if (a.first_level() != b.first_level() || a.last_level() != b.last_level()) {
    throw Error(Errc::LevelMismatch, "loop towers cover different levels");
  }
  std::vector<LevelLoopClass> classes;
  for (std::size_t i = 0; i < a.classes().size(); ++i) classes.push_back(wedge_compose(a.classes()[i], b.classes()[i]));
  return LoopClassTower(a.codomains(), std::move(classes));
}

std::vector<LevelCodomain> codomain_tower(const ClopenManifold& n, int first_level, int last_level) {
  std::vector<LevelCodomain> out;
  for (int k = first_level; k <= last_level; ++k) out.emplace_back(discretize(n, k));
  return out;
}

LoopClassTower project_loop(DomainLabel base_point,
                            const std::vector<std::pair<DomainLabel, std::vector<PadicApprox>>>& values,
                            const std::vector<LevelCodomain>& codomains) {
  std::vector<LevelLoopClass> classes;
  for (const auto& cod : codomains) {
    BasedFiniteMap f{base_point, {}};
    for (const auto& [label, x] : values) f.assignments.emplace_back(label, project(x, cod.level()));
    classes.push_back(canonicalize(f, cod));
  }
  return LoopClassTower(codomains, std::move(classes));
}

}  // namespace profinite
