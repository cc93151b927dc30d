#include "profinite/grothendieck.hpp"

#include <limits>
#include <string>

namespace profinite {

namespace {

void require_same_group(const GrothElem& x, const GrothElem& y) {
  if (x.prime() != y.prime() || x.level() != y.level() || x.dim() != y.dim()) {
    throw Error(Errc::LevelMismatch, "elements of different Grothendieck groups");
  }
}

GrothElem::Coords pruned(GrothElem::Coords coords) {
  std::erase_if(coords, [](const auto& kv) { return kv.second == 0; });
  return coords;
}

}  // namespace

GrothElem::GrothElem(const LevelCodomain& codomain) : GrothElem(codomain, {}) {}

GrothElem::GrothElem(const LevelCodomain& codomain, Coords coords)
    : GrothElem(codomain.prime(), codomain.level(), codomain.dim(), pruned(std::move(coords))) {
  for (const auto& [v, c] : coords_) {
    if (v == codomain.zero() || !codomain.values().contains(v)) {
      throw Error(Errc::InvalidArgument, "coordinates are indexed by nonzero codomain values");
    }
  }
}

GrothElem::GrothElem(Prime p, int level, int dim, Coords coords)
    : prime_(p), level_(level), dim_(dim), coords_(std::move(coords)) {}

Integer GrothElem::coordinate(const ResidueVector& v) const {
  auto it = coords_.find(v);
  return it == coords_.end() ? Integer(0) : it->second;
}

GrothElem embed(const LevelLoopClass& c) {
  GrothElem::Coords coords;
  for (const auto& [v, mult] : c.entries()) coords.emplace(v, Integer(mult));
  return GrothElem(c.prime(), c.level(), c.dim(), std::move(coords));
}

GrothElem add(const GrothElem& x, const GrothElem& y) {
  require_same_group(x, y);
  GrothElem::Coords coords = x.coords();
  for (const auto& [v, c] : y.coords()) coords[v] += c;
  return GrothElem(x.prime(), x.level(), x.dim(), pruned(std::move(coords)));
}

GrothElem negate(const GrothElem& x) {
  GrothElem::Coords coords = x.coords();
  for (auto& kv : coords) kv.second = -kv.second;
  return GrothElem(x.prime(), x.level(), x.dim(), std::move(coords));
}

GrothElem subtract(const GrothElem& x, const GrothElem& y) { return add(x, negate(y)); }

std::pair<LevelLoopClass, LevelLoopClass> as_difference(const GrothElem& x, const LevelCodomain& codomain) {
  std::vector<LevelLoopClass::Entry> pos, neg;
  for (const auto& [v, c] : x.coords()) {
    const Integer mag = c < 0 ? Integer(-c) : c;
    if (mag > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(Errc::TooLarge, "multiplicity does not fit a loop class");
    }
    (c > 0 ? pos : neg).emplace_back(v, static_cast<std::uint64_t>(mag));
  }
  return {LevelLoopClass(codomain, std::move(pos)), LevelLoopClass(codomain, std::move(neg))};
}

GrothElem connecting(const GrothElem& x, const LevelCodomain& target) {
  if (target.level() > x.level() || target.prime() != x.prime() || target.dim() != x.dim()) {
    throw Error(Errc::LevelMismatch, "no connecting map to level " + std::to_string(target.level()));
  }
  GrothElem::Coords coords;
  for (const auto& [v, c] : x.coords()) {
    ResidueVector down = reduce(v, target.level());
    if (!target.values().contains(down)) throw Error(Errc::PointNotInManifold, "value leaves the target codomain");
    if (!(down == target.zero())) coords[down] += c;
  }
  return GrothElem(target.prime(), target.level(), target.dim(), pruned(std::move(coords)));
}

std::size_t free_rank(const LevelCodomain& codomain) { return codomain.values().size() - 1; }

Integer GroupHom::operator()(const GrothElem& x) const {
  Integer total = 0;
  for (const auto& [v, c] : x.coords()) {
    auto it = weights_.find(v);
    if (it != weights_.end()) total += c * it->second;
  }
  return total;
}

GroupHom universal_extend(const MonoidHom& h, const LevelCodomain& codomain, std::size_t check_support) {
  const LevelLoopClass unit(codomain);
  if (h(unit) != 0) throw Error(Errc::NotHomomorphism, "h does not send the unit class to 0");

  std::vector<LevelLoopClass> generators;
  std::map<ResidueVector, Integer> weights;
  for (const auto& v : codomain.nonzero_values()) {
    generators.emplace_back(codomain, std::vector<LevelLoopClass::Entry>{{v, 1}});
    weights.emplace(v, h(generators.back()));
  }

  auto check = [&](const LevelLoopClass& a, const LevelLoopClass& b) {
    if (h(wedge_compose(a, b)) != h(a) + h(b)) {
      throw Error(Errc::NotHomomorphism, "h(a v b) != h(a) + h(b) for classes of sizes " +
                                             std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
  };
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i; j < generators.size(); ++j) check(generators[i], generators[j]);
  }
  if (check_support > 0) {
    const auto small = enumerate_classes(check_support + 1, codomain, check_support);
    for (const auto& a : small) {
      for (const auto& b : small) check(a, b);
    }
  }
  return GroupHom(std::move(weights));
}

RankReport rank_report(const LevelCodomain& codomain) {
  return RankReport{codomain.values().size(), free_rank(codomain), codomain.values().size()};
}

}  // namespace profinite
