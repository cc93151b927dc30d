#include "profinite/diff_profinite.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "profinite/rng.hpp"

namespace profinite {

namespace {

// children[i] lists the indices of `fine` lying over coarse point i, in increasing order.
std::vector<std::vector<std::size_t>> children_of(const LevelSet& fine, const LevelSet& coarse) {
  std::vector<std::vector<std::size_t>> out(coarse.size());
  const auto parent = connecting_indices(fine, coarse);
  for (std::size_t i = 0; i < parent.size(); ++i) out[parent[i]].push_back(i);
  return out;
}

void require_based(const LevelSet& domain) {
  if (!domain.base_point()) throw Error(Errc::InvalidArgument, "based towers need a marked point");
}

// Shape-aware construction shared by random_tower and random_based_tower.
PermTower build_random_tower(const ClopenManifold& m, int depth, std::uint64_t seed, bool pin_base) {
  if (depth < 1) throw Error(Errc::InvalidArgument, "tower depth must be >= 1");
  std::vector<LevelSet> sets;
  for (int k = 1; k <= depth; ++k) sets.push_back(discretize(m, k));
  if (pin_base) require_based(sets.front());

  std::vector<std::vector<std::vector<std::size_t>>> kids(sets.size());
  for (std::size_t k = 0; k + 1 < sets.size(); ++k) kids[k] = children_of(sets[k + 1], sets[k]);

  // Canonical subtree ids, computed bottom-up; the pinned base point gets a distinct id.
  std::vector<std::vector<int>> shape(sets.size());
  std::map<std::pair<std::size_t, std::vector<int>>, int> intern;
  for (std::size_t k = sets.size(); k-- > 0;) {
    shape[k].resize(sets[k].size());
    for (std::size_t i = 0; i < sets[k].size(); ++i) {
      std::vector<int> key;
      if (k + 1 < sets.size()) {
        for (auto c : kids[k][i]) key.push_back(shape[k + 1][c]);
        std::sort(key.begin(), key.end());
      }
      if (pin_base && sets[k][i] == *sets[k].base_point()) key.push_back(-1 - static_cast<int>(i));
      auto [it, inserted] = intern.try_emplace({k, key}, static_cast<int>(intern.size()));
      shape[k][i] = it->second;
    }
  }

  // Match `from` onto `to` class by class, shuffling each class of `to` with `rng`.
  auto match = [&](std::size_t k, const std::vector<std::size_t>& from, const std::vector<std::size_t>& to,
                   Rng& rng, std::vector<std::size_t>& image) {
    std::map<int, std::vector<std::size_t>> src, dst;
    for (auto i : from) src[shape[k][i]].push_back(i);
    for (auto j : to) dst[shape[k][j]].push_back(j);
    for (auto& [id, members] : src) {
      auto& targets = dst[id];
      if (targets.size() != members.size()) throw Error(Errc::UnequalFibers, "subtree shapes do not match");
      rng.shuffle(targets.begin(), targets.end());
      for (std::size_t t = 0; t < members.size(); ++t) image[members[t]] = targets[t];
    }
  };

  std::vector<LevelPerm> levels;
  {
    std::vector<std::size_t> all(sets[0].size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::size_t> image(all.size());
    Rng rng(derive_seed(seed, std::string_view("level-1")));
    match(0, all, all, rng, image);
    levels.emplace_back(sets[0], std::move(image));
  }
  for (std::size_t k = 1; k < sets.size(); ++k) {
    const auto& prev = levels.back();
    std::vector<std::size_t> image(sets[k].size());
    const std::uint64_t level_seed = derive_seed(seed, static_cast<std::uint64_t>(k + 1));
    for (std::size_t i = 0; i < sets[k - 1].size(); ++i) {
      Rng rng(derive_seed(level_seed, static_cast<std::uint64_t>(i)));
      match(k, kids[k - 1][i], kids[k - 1][prev.image()[i]], rng, image);
    }
    levels.emplace_back(sets[k], std::move(image));
  }
  return PermTower(std::move(levels));
}

}  // namespace

LevelPerm::LevelPerm(LevelSet domain, std::vector<std::size_t> image)
    : domain_(std::move(domain)), image_(std::move(image)) {
  if (image_.size() != domain_.size()) throw Error(Errc::NotBijective, "permutation table is not total");
  std::vector<bool> hit(image_.size(), false);
  for (auto j : image_) {
    if (j >= image_.size() || hit[j]) throw Error(Errc::NotBijective, "permutation table is not a bijection");
    hit[j] = true;
  }
}

LevelPerm LevelPerm::identity(const LevelSet& domain) {
  std::vector<std::size_t> image(domain.size());
  std::iota(image.begin(), image.end(), 0);
  return LevelPerm(domain, std::move(image));
}

const ResidueVector& LevelPerm::operator()(const ResidueVector& x) const {
  auto i = domain_.index_of(x);
  if (!i) throw Error(Errc::PointNotInManifold, "point outside the permutation domain");
  return domain_[image_[*i]];
}

LevelPerm compose(const LevelPerm& a, const LevelPerm& b) {
  if (!(a.domain() == b.domain())) throw Error(Errc::DomainMismatch, "permutations act on different sets");
  std::vector<std::size_t> image(b.size());
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = a.image()[b.image()[i]];
  return LevelPerm(a.domain(), std::move(image));
}

LevelPerm invert(const LevelPerm& a) {
  std::vector<std::size_t> image(a.size());
  for (std::size_t i = 0; i < image.size(); ++i) image[a.image()[i]] = i;
  return LevelPerm(a.domain(), std::move(image));
}

bool reduces_to(const LevelPerm& fine, const LevelPerm& coarse) {
  return commutes_with_projection(fine.as_map(), coarse.as_map());
}

PermTower::PermTower(std::vector<LevelPerm> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw Error(Errc::InvalidArgument, "a tower needs at least one level");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].level() != static_cast<int>(i) + 1) {
      throw Error(Errc::TowerIncompatible, "tower levels must run 1..K in order");
    }
  }
  for (std::size_t l = 1; l < levels_.size(); ++l) {
    for (std::size_t k = 0; k < l; ++k) {
      if (!reduces_to(levels_[l], levels_[k])) {
        throw Error(Errc::TowerIncompatible, "level " + std::to_string(l + 1) +
                                                 " does not reduce to level " + std::to_string(k + 1));
      }
    }
  }
}

PermTower PermTower::identity(const ClopenManifold& m, int depth) {
  std::vector<LevelPerm> levels;
  for (int k = 1; k <= depth; ++k) levels.push_back(LevelPerm::identity(discretize(m, k)));
  return PermTower(std::move(levels));
}

PermTower compose(const PermTower& a, const PermTower& b) {
  if (a.depth() != b.depth()) throw Error(Errc::DomainMismatch, "towers have different depths");
  std::vector<LevelPerm> levels;
  for (int k = 1; k <= a.depth(); ++k) levels.push_back(compose(a.at(k), b.at(k)));
  return PermTower(std::move(levels));
}

PermTower invert(const PermTower& a) {
  std::vector<LevelPerm> levels;
  for (const auto& s : a.levels()) levels.push_back(invert(s));
  return PermTower(std::move(levels));
}

BasedPermTower::BasedPermTower(PermTower tower) : tower_(std::move(tower)) {
  for (const auto& s : tower_.levels()) {
    require_based(s.domain());
    const auto& base = *s.domain().base_point();
    if (!(s(base) == base)) {
      throw Error(Errc::BasePointMoved, "level " + std::to_string(s.level()) + " moves the base point");
    }
  }
}

BasedPermTower compose(const BasedPermTower& a, const BasedPermTower& b) {
  return BasedPermTower(compose(a.tower(), b.tower()));
}

BasedPermTower invert(const BasedPermTower& a) { return BasedPermTower(invert(a.tower())); }

LevelPerm random_lift(const ClopenManifold& m, const LevelPerm& sigma, int l, std::uint64_t seed) {
  if (l <= sigma.level()) throw Error(Errc::LevelMismatch, "lift target must be above the source level");
  LevelSet fine = discretize(m, l);
  const auto kids = children_of(fine, sigma.domain());
  std::vector<std::size_t> image(fine.size());
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const auto& src = kids[i];
    auto dst = kids[sigma.image()[i]];
    if (src.size() != dst.size()) {
      throw Error(Errc::UnequalFibers, "fibres over a point and its image have different sizes");
    }
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    rng.shuffle(dst.begin(), dst.end());
    for (std::size_t t = 0; t < src.size(); ++t) image[src[t]] = dst[t];
  }
  return LevelPerm(std::move(fine), std::move(image));
}

LevelPerm random_level_perm(const LevelSet& domain, std::uint64_t seed) {
  std::vector<std::size_t> image(domain.size());
  std::iota(image.begin(), image.end(), 0);
  Rng rng(seed);
  rng.shuffle(image.begin(), image.end());
  return LevelPerm(domain, std::move(image));
}

PermTower random_tower(const ClopenManifold& m, int depth, std::uint64_t seed) {
  return build_random_tower(m, depth, seed, false);
}

BasedPermTower random_based_tower(const ClopenManifold& m, int depth, std::uint64_t seed) {
  return BasedPermTower(build_random_tower(m, depth, seed, true));
}

std::vector<LevelPerm> enumerate_level_perms(const LevelSet& domain, std::size_t max_points) {
  if (domain.size() > max_points) {
    throw Error(Errc::TooLarge, std::to_string(domain.size()) + "! permutations exceed the enumeration bound");
  }
  std::vector<std::size_t> image(domain.size());
  std::iota(image.begin(), image.end(), 0);
  std::vector<LevelPerm> out;
  do {
    out.emplace_back(domain, image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

GroupOrder group_order(const ClopenManifold& m, int k) {
  constexpr unsigned kMaxFactorial = 20000;
  const auto n = discretize(m, k).size();
  if (n > kMaxFactorial) throw Error(Errc::TooLarge, "card(M_k) too large for an exact factorial");
  const Prime p = m.prime();
  GroupOrder g{};
  g.level = k;
  g.points = n;
  g.order = factorial(static_cast<unsigned>(n));

  int b = 0;
  while (p.power(b + 1) <= n) ++b;
  g.factorial_exponent = b;
  g.factorial_divides = g.order % factorial(static_cast<unsigned>(p.power(b))) == 0;

  g.verified_exponent = verified_divisibility_exponent(m, k);
  g.verified_divides = g.points % p.power(g.verified_exponent) == 0;

  g.literal_exponent = literal_divisibility_exponent(m, k);
  const Integer literal_power = p.power(g.literal_exponent);
  g.literal_card_divides = g.points % literal_power == 0;
  // (p^a)! divides n! exactly when p^a <= n.
  g.literal_factorial_divides = literal_power <= g.points;
  return g;
}

Rational weak_distance(const PermTower& a, const PermTower& b) {
  if (a.depth() != b.depth()) throw Error(Errc::DomainMismatch, "towers have different depths");
  for (int k = 1; k <= a.depth(); ++k) {
    if (!(a.at(k).domain() == b.at(k).domain())) throw Error(Errc::DomainMismatch, "towers over different sets");
  }
  for (int k = 1; k <= a.depth(); ++k) {
    if (a.at(k).image() != b.at(k).image()) {
      const Prime p = a.at(k).domain().prime();
      return Rational(Integer(1), p.power(k));
    }
  }
  return Rational(0);
}

}  // namespace profinite
