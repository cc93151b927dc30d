#include "profinite/manifold_tower.hpp"

#include <algorithm>
#include <string>

namespace profinite {

namespace {

// Centre coordinate modulo p^e, e <= precision.
Integer center_mod(const PadicApprox& c, int e) {
  if (e == 0) return 0;
  return c.truncate(e).value();
}

bool congruent_to_ball(const Ball& b, std::span<const Integer> coords, int level, Prime p) {
  const int e = std::min(level, b.radius_exp);
  if (e == 0) return true;
  const Integer m = p.power(e);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (mod_floor(coords[i], m) != center_mod(b.center[i], e)) return false;
  }
  return true;
}

// Cartesian product of per-coordinate value lists, appended to `out`.
void append_product(Prime p, int level, const std::vector<std::vector<Integer>>& axes,
                    std::vector<ResidueVector>& out) {
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    std::vector<Integer> v;
    v.reserve(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i) v.push_back(axes[i][idx[i]]);
    out.emplace_back(p, level, std::move(v));
    std::size_t i = 0;
    for (; i < axes.size(); ++i) {
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
    }
    if (i == axes.size()) return;
  }
}

}  // namespace

ClopenManifold::ClopenManifold(Prime p, int dim, std::vector<Ball> balls,
                               std::optional<std::vector<PadicApprox>> base_point)
    : prime_(p), dim_(dim), balls_(std::move(balls)), base_point_(std::move(base_point)) {
  if (dim_ < 1) throw Error(Errc::InvalidArgument, "manifold dimension must be >= 1");
  if (balls_.empty()) throw Error(Errc::InvalidArgument, "a manifold needs at least one ball");
  for (const auto& b : balls_) {
    if (static_cast<int>(b.center.size()) != dim_) {
      throw Error(Errc::InvalidArgument, "ball centre has wrong dimension");
    }
    if (b.radius_exp < 0) throw Error(Errc::InvalidArgument, "radius exponent must be >= 0");
    for (const auto& c : b.center) {
      if (c.prime() != p) throw Error(Errc::InvalidArgument, "ball centre over a different prime");
      if (c.precision() < b.radius_exp) {
        throw Error(Errc::PrecisionExceeded, "ball centre is known to fewer digits than its radius exponent");
      }
    }
  }
  for (std::size_t i = 0; i < balls_.size(); ++i) {
    for (std::size_t j = i + 1; j < balls_.size(); ++j) {
      const int e = std::min(balls_[i].radius_exp, balls_[j].radius_exp);
      bool separated = false;
      for (int c = 0; c < dim_ && !separated; ++c) {
        separated = center_mod(balls_[i].center[c], e) != center_mod(balls_[j].center[c], e);
      }
      if (!separated) {
        throw Error(Errc::OverlappingBalls,
                    "balls " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
  if (base_point_) {
    if (static_cast<int>(base_point_->size()) != dim_) {
      throw Error(Errc::InvalidArgument, "base point has wrong dimension");
    }
    const bool inside = std::any_of(balls_.begin(), balls_.end(), [&](const Ball& b) {
      for (int c = 0; c < dim_; ++c) {
        const auto& x = (*base_point_)[c];
        if (x.prime() != p) return false;
        if (x.precision() < b.radius_exp) return false;
        if (center_mod(x, b.radius_exp) != center_mod(b.center[c], b.radius_exp)) return false;
      }
      return true;
    });
    if (!inside) throw Error(Errc::PointNotInManifold, "base point lies in no ball");
  }
}

ClopenManifold ClopenManifold::whole(Prime p, int dim, int base_precision) {
  std::vector<PadicApprox> origin(static_cast<std::size_t>(dim), PadicApprox(p, {0}));
  std::vector<PadicApprox> base(static_cast<std::size_t>(dim),
                                PadicApprox::from_integer(p, 0, base_precision));
  return ClopenManifold(p, dim, {Ball{origin, 0}}, base);
}

int ClopenManifold::resolution() const noexcept {
  int r = 0;
  for (const auto& b : balls_) r = std::max(r, b.radius_exp);
  return r;
}

int ClopenManifold::max_level() const noexcept {
  if (!base_point_) return std::numeric_limits<int>::max();
  int r = std::numeric_limits<int>::max();
  for (const auto& c : *base_point_) r = std::min(r, c.precision());
  return r;
}

bool ClopenManifold::covers(const ResidueVector& x) const {
  if (x.prime() != prime_ || static_cast<int>(x.dim()) != dim_) return false;
  return std::any_of(balls_.begin(), balls_.end(),
                     [&](const Ball& b) { return congruent_to_ball(b, x.values(), x.level(), prime_); });
}

LevelSet::LevelSet(Prime p, int level, int dim, std::vector<ResidueVector> points,
                   std::optional<ResidueVector> base_point)
    : prime_(p), level_(level), dim_(dim), base_point_(std::move(base_point)) {
  for (const auto& x : points) {
    if (x.prime() != p || x.level() != level || static_cast<int>(x.dim()) != dim) {
      throw Error(Errc::LevelMismatch, "level set point has the wrong shape");
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points_ = std::make_shared<const std::vector<ResidueVector>>(std::move(points));
  if (base_point_ && !contains(*base_point_)) {
    throw Error(Errc::PointNotInManifold, "base point image is not a point of the level set");
  }
}

std::optional<std::size_t> LevelSet::index_of(const ResidueVector& x) const {
  if (x.prime() != prime_ || x.level() != level_ || static_cast<int>(x.dim()) != dim_) return std::nullopt;
  auto it = std::lower_bound(points_->begin(), points_->end(), x);
  if (it == points_->end() || !(*it == x)) return std::nullopt;
  return static_cast<std::size_t>(it - points_->begin());
}

LevelSet full_level_set(Prime p, int level, int dim) {
  const Integer m = p.power(level);
  std::vector<Integer> axis;
  for (Integer v = 0; v < m; ++v) axis.push_back(v);
  std::vector<ResidueVector> pts;
  append_product(p, level, std::vector<std::vector<Integer>>(static_cast<std::size_t>(dim), axis), pts);
  return LevelSet(p, level, dim, std::move(pts),
                  ResidueVector(p, level, std::vector<Integer>(static_cast<std::size_t>(dim), 0)));
}

LevelSet discretize(const ClopenManifold& m, int k) {
  if (k < 1) throw Error(Errc::LevelMismatch, "levels start at 1");
  if (k > m.max_level()) {
    throw Error(Errc::PrecisionExceeded, "base point is not known to level " + std::to_string(k));
  }
  const Prime p = m.prime();
  std::vector<ResidueVector> pts;
  for (const auto& b : m.balls()) {
    const int e = std::min(k, b.radius_exp);
    const Integer step = p.power(e);
    const Integer count = p.power(k - e);
    std::vector<std::vector<Integer>> axes;
    for (const auto& c : b.center) {
      const Integer base = center_mod(c, e);
      std::vector<Integer> axis;
      for (Integer j = 0; j < count; ++j) axis.push_back(base + j * step);
      axes.push_back(std::move(axis));
    }
    append_product(p, k, axes, pts);
  }
  std::optional<ResidueVector> base;
  if (m.base_point()) base = project(*m.base_point(), k);
  return LevelSet(p, k, m.dim(), std::move(pts), std::move(base));
}

Integer cardinality(const ClopenManifold& m, int k) {
  if (k < m.resolution()) {
    throw Error(Errc::LevelTooSmall,
                "level " + std::to_string(k) + " is below the resolution " + std::to_string(m.resolution()));
  }
  Integer total = 0;
  for (const auto& b : m.balls()) total += m.prime().power(m.dim() * (k - b.radius_exp));
  return total;
}

std::vector<ResidueVector> fiber(const ClopenManifold& m, const ResidueVector& x, int l) {
  if (!m.covers(x)) throw Error(Errc::PointNotInManifold, "point is not in the manifold image");
  if (l <= x.level()) throw Error(Errc::LevelMismatch, "fiber level must exceed the point level");
  if (l > m.max_level()) throw Error(Errc::PrecisionExceeded, "level beyond base point precision");
  const Prime p = m.prime();
  std::vector<std::vector<Integer>> axes;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    std::vector<Integer> axis;
    for (const auto& r : fiber_enumerate(x[i], l)) axis.push_back(r.value());
    axes.push_back(std::move(axis));
  }
  std::vector<ResidueVector> candidates;
  append_product(p, l, axes, candidates);
  std::vector<ResidueVector> out;
  for (auto& y : candidates) {
    if (m.covers(y)) out.push_back(std::move(y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

int verified_divisibility_exponent(const ClopenManifold& m, int k) {
  int e = std::numeric_limits<int>::max();
  for (const auto& b : m.balls()) e = std::min(e, k - b.radius_exp);
  return m.dim() * std::max(e, 0);
}

int literal_divisibility_exponent(const ClopenManifold& m, int k) {
  int a = 0;
  for (const auto& b : m.balls()) a += k + b.radius_exp;
  return a;
}

std::vector<std::size_t> connecting_indices(const LevelSet& fine, const LevelSet& coarse) {
  if (coarse.level() > fine.level() || coarse.prime() != fine.prime() || coarse.dim() != fine.dim()) {
    throw Error(Errc::LevelMismatch, "level sets are not connected by a projection");
  }
  std::vector<std::size_t> out;
  out.reserve(fine.size());
  for (const auto& x : fine.points()) {
    auto idx = coarse.index_of(reduce(x, coarse.level()));
    if (!idx) throw Error(Errc::PointNotInManifold, "projection leaves the coarse level set");
    out.push_back(*idx);
  }
  return out;
}

}  // namespace profinite
