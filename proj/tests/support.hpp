#pragma once

// Test-only generators and brute-force oracles. Nothing here calls into the code paths
// it is used to check, except for constructing inputs.

#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "profinite/diff_profinite.hpp"
#include "profinite/manifold_tower.hpp"
#include "profinite/rng.hpp"

namespace profinite::testing {

inline PadicApprox padic(std::uint64_t p, const Integer& v, int precision) {
  return PadicApprox::from_integer(Prime(p), v, precision);
}

inline std::uint64_t upow(std::uint64_t p, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

/// One-dimensional union of balls B(center, p^-s); centers given as integers.
inline ClopenManifold balls_1d(std::uint64_t p, const std::vector<std::pair<std::uint64_t, int>>& balls,
                               std::optional<std::uint64_t> base = std::nullopt, int precision = 8) {
  std::vector<Ball> bs;
  for (auto [c, s] : balls) bs.push_back(Ball{{padic(p, c, precision)}, s});
  std::optional<std::vector<PadicApprox>> bp;
  if (base) bp = std::vector<PadicApprox>{padic(p, *base, precision)};
  return ClopenManifold(Prime(p), 1, std::move(bs), std::move(bp));
}

/// Random finite disjoint union of balls: walk the p^m-ary tree from the root, at each node
/// either keep the whole ball, drop it, or descend. Always nonempty.
inline ClopenManifold random_manifold(Rng& rng, std::uint64_t p, int dim, int max_radius, bool based,
                                      int precision = 8) {
  struct Node {
    std::vector<std::uint64_t> center;
    int s;
  };
  std::vector<Node> kept;
  std::function<void(const Node&)> visit = [&](const Node& n) {
    const auto r = rng.below(4);
    if (n.s == max_radius || r == 0) {
      kept.push_back(n);
      return;
    }
    if (r == 1 && n.s > 0) return;  // drop
    const std::uint64_t step = upow(p, n.s);
    const std::uint64_t children = upow(p, dim);
    for (std::uint64_t c = 0; c < children; ++c) {
      Node child{n.center, n.s + 1};
      std::uint64_t t = c;
      for (int i = 0; i < dim; ++i) {
        child.center[static_cast<std::size_t>(i)] += (t % p) * step;
        t /= p;
      }
      visit(child);
    }
  };
  while (kept.empty()) visit(Node{std::vector<std::uint64_t>(static_cast<std::size_t>(dim), 0), 0});
  std::vector<Ball> balls;
  for (const auto& n : kept) {
    Ball b;
    for (auto c : n.center) b.center.push_back(padic(p, c, precision));
    b.radius_exp = n.s;
    balls.push_back(std::move(b));
  }
  std::optional<std::vector<PadicApprox>> base;
  if (based) {
    const auto& b = kept[rng.below(kept.size())];
    std::vector<PadicApprox> pt;
    for (auto c : b.center) pt.push_back(padic(p, c, precision));
    base = std::move(pt);
  }
  return ClopenManifold(Prime(p), dim, std::move(balls), std::move(base));
}

/// Brute-force M_k: scan every vector in [0, p^k)^m and test congruence to some ball centre.
inline std::set<std::vector<std::uint64_t>> brute_force_points(const ClopenManifold& m, int k) {
  const std::uint64_t p = m.prime().value();
  const std::uint64_t size = upow(p, k);
  std::set<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> x(static_cast<std::size_t>(m.dim()), 0);
  while (true) {
    for (const auto& b : m.balls()) {
      const int e = std::min(k, b.radius_exp);
      const std::uint64_t mod = upow(p, e);
      bool in = true;
      for (int i = 0; i < m.dim() && in; ++i) {
        const auto c = static_cast<std::uint64_t>(b.center[static_cast<std::size_t>(i)].value() % mod);
        in = x[static_cast<std::size_t>(i)] % mod == c;
      }
      if (in) {
        out.insert(x);
        break;
      }
    }
    std::size_t i = 0;
    for (; i < x.size(); ++i) {
      if (++x[i] < size) break;
      x[i] = 0;
    }
    if (i == x.size()) return out;
  }
}

inline std::vector<std::uint64_t> as_u64(const ResidueVector& v) {
  std::vector<std::uint64_t> out;
  for (const auto& c : v.values()) out.push_back(static_cast<std::uint64_t>(c));
  return out;
}

/// Independent check of pi^l_k o s_l = s_k o pi^l_k written against raw index tables.
inline bool levels_compatible(const LevelPerm& fine, const LevelPerm& coarse) {
  const int k = coarse.level();
  const std::uint64_t mod = upow(coarse.domain().prime().value(), k);
  auto down = [&](const ResidueVector& x) {
    std::vector<std::uint64_t> r;
    for (const auto& c : x.values()) r.push_back(static_cast<std::uint64_t>(c) % mod);
    return r;
  };
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const auto x = down(fine.domain()[i]);
    const auto fx = down(fine.domain()[fine.image()[i]]);
    bool found = false;
    for (std::size_t j = 0; j < coarse.size(); ++j) {
      if (as_u64(coarse.domain()[j]) == x) {
        found = true;
        if (as_u64(coarse.domain()[coarse.image()[j]]) != fx) return false;
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Every tower of the given depth: all level-1 permutations, then every fibrewise bijection.
inline std::vector<PermTower> all_towers(const ClopenManifold& m, int depth) {
  std::vector<LevelSet> sets;
  for (int k = 1; k <= depth; ++k) sets.push_back(discretize(m, k));
  std::vector<std::vector<LevelPerm>> partial;
  for (const auto& s : enumerate_level_perms(sets[0], 8)) partial.push_back({s});
  for (std::size_t k = 1; k < sets.size(); ++k) {
    // Candidate level-k perms are all perms of M_k that reduce to the previous level.
    const auto candidates = enumerate_level_perms(sets[k], 6);
    std::vector<std::vector<LevelPerm>> next;
    for (const auto& prefix : partial) {
      for (const auto& c : candidates) {
        if (levels_compatible(c, prefix.back())) {
          auto t = prefix;
          t.push_back(c);
          next.push_back(std::move(t));
        }
      }
    }
    partial = std::move(next);
  }
  std::vector<PermTower> out;
  for (auto& levels : partial) out.emplace_back(std::move(levels));
  return out;
}

}  // namespace profinite::testing
