#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "json_util.hpp"
#include "profinite/cli/report.hpp"
#include "profinite/completion.hpp"
#include "profinite/diff_profinite.hpp"
#include "profinite/grothendieck.hpp"
#include "profinite/rng.hpp"

namespace profinite::cli {

using nlohmann::json;
using profinite::to_string;

namespace {

// Sizes above which exhaustive level computations are skipped rather than attempted.
constexpr std::uint64_t kMaxLevelPoints = 20000;
constexpr std::uint64_t kMaxSampledPoints = 50000;
constexpr std::size_t kExhaustiveClasses = 40;
constexpr std::uint64_t kMaxOrbitMaps = 4096;

struct Context {
  const Scenario& s;
  Prime p;
  ClopenManifold m;
  ClopenManifold n;
};

class Recorder {
 public:
  void count(std::uint64_t n = 1) { cases_ += n; }

  /// Records the first violation. `detail` is only evaluated on failure.
  template <class Detail>
  bool require(bool ok, std::string_view law, Detail&& detail) {
    if (!ok && !failure_) {
      json w = detail();
      w["law"] = std::string(law);
      failure_ = std::move(w);
    }
    return ok;
  }
  bool require(bool ok, std::string_view law) {
    return require(ok, law, [] { return json::object(); });
  }

  void skip(std::string reason) {
    if (!skip_) skip_ = std::move(reason);
  }
  bool failed() const { return failure_.has_value(); }

  CheckResult finish(std::string name) && {
    CheckResult r;
    r.name = std::move(name);
    r.cases = cases_;
    if (failure_) {
      r.status = CheckStatus::Fail;
      r.witness = std::move(*failure_);
    } else if (skip_ && cases_ == 0) {
      r.status = CheckStatus::Skipped;
      r.witness = {{"reason", *skip_}};
    } else if (skip_) {
      r.witness = {{"partially_skipped", *skip_}};
    }
    return r;
  }

 private:
  std::uint64_t cases_ = 0;
  std::optional<json> failure_;
  std::optional<std::string> skip_;
};

using CheckFn = std::function<void(const Context&, Rng&, Recorder&)>;

struct CheckDef {
  std::string name;
  CheckFn run;
};

std::uint64_t trials(const Context& c, std::uint64_t divisor) { return std::max<std::uint64_t>(1, c.s.bounds.samples / divisor); }

Integer integer_power(Prime p, int k) { return p.power(k); }

PadicApprox random_padic(Prime p, int digits, Rng& rng) {
  std::vector<std::uint64_t> d;
  for (int i = 0; i < digits; ++i) d.push_back(rng.below(p.value()));
  return PadicApprox(p, std::move(d));
}

// Card(M_k) is nondecreasing in k, so bounding the top level bounds them all.
bool level_too_large(const ClopenManifold& m, int k, std::uint64_t limit) {
  return cardinality(m, std::max(k, m.resolution())) > limit;
}

std::vector<std::int64_t> random_poly(Rng& rng) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(rng.between(1, 4)));
  for (auto& a : c) a = rng.between(-20, 20);
  return c;
}

// Coordinatewise integer polynomials, evaluated exactly and truncated to the input precision.
PointOracle poly_oracle(Prime p, std::vector<std::vector<std::int64_t>> polys) {
  return [p, polys = std::move(polys)](std::span<const PadicApprox> x) {
    std::vector<PadicApprox> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Integer v = x[i].value();
      Integer acc = 0;
      for (auto it = polys[i].rbegin(); it != polys[i].rend(); ++it) acc = acc * v + *it;
      out.push_back(PadicApprox::from_integer(p, acc, x[i].precision()));
    }
    return out;
  };
}

json tower_images(const PermTower& t) {
  json out = json::array();
  for (const auto& l : t.levels()) out.push_back(l.image());
  return out;
}

// --- checks ---------------------------------------------------------------------------------

void level_ring_homomorphism(const Context& c, Rng& rng, Recorder& rec) {
  const std::uint64_t n = c.s.bounds.samples * 20;
  for (std::uint64_t t = 0; t < n && !rec.failed(); ++t) {
    const int l = static_cast<int>(rng.between(1, c.s.depth));
    const int k = static_cast<int>(rng.between(1, l));
    const auto xa = random_padic(c.p, l, rng), xb = random_padic(c.p, l, rng);
    const Integer a = xa.value(), b = xb.value(), mk = integer_power(c.p, k);
    const Residue ra(c.p, l, a), rb(c.p, l, b);
    auto detail = [&] { return json{{"level", l}, {"target", k}, {"a", to_string(a)}, {"b", to_string(b)}}; };
    rec.require(reduce(ra + rb, k) == reduce(ra, k) + reduce(rb, k), "pi^l_k(a + b) = pi^l_k(a) + pi^l_k(b)", detail);
    rec.require(reduce(ra * rb, k) == reduce(ra, k) * reduce(rb, k), "pi^l_k(a * b) = pi^l_k(a) * pi^l_k(b)", detail);
    rec.require(reduce(ra * rb, k).value() == mod_floor(a * b, mk), "reduction agrees with modular arithmetic", detail);
    rec.require(project(xa, k).value() == mod_floor(a, mk), "pi_k of a digit tower is its truncation", detail);
    rec.require(reduce(project(xa, l), k) == project(xa, k), "pi^l_k o pi_l = pi_k", detail);
    rec.count();
  }
}

void manifold_discretization(const Context& c, Rng&, Recorder& rec) {
  if (level_too_large(c.m, c.s.depth, kMaxLevelPoints)) return rec.skip("M_K has more than 20000 points");
  for (int k = 1; k <= c.s.depth; ++k) {
    const auto mk = discretize(c.m, k);
    for (const auto& x : mk.points()) {
      rec.require(c.m.covers(x), "every point of M_k lies over the manifold", [&] {
        return json{{"level", k}, {"point", point_json(x)}};
      });
    }
    if (k >= c.m.resolution()) {
      rec.require(cardinality(c.m, k) == mk.size(), "card(M_k) = sum_i p^(m(k - s_i))", [&] {
        return json{{"level", k}, {"closed_form", to_string(cardinality(c.m, k))}, {"enumerated", mk.size()}};
      });
      const int e = verified_divisibility_exponent(c.m, k);
      rec.require(mod_floor(Integer(mk.size()), integer_power(c.p, e)) == 0, "p^(m min(k - s_i)) divides card(M_k)",
                  [&] { return json{{"level", k}, {"exponent", e}, {"points", mk.size()}}; });
    }
    if (k < c.s.depth) {
      std::size_t total = 0;
      for (const auto& x : mk.points()) total += fiber(c.m, x, k + 1).size();
      rec.require(total == discretize(c.m, k + 1).size(), "fibres over M_k partition M_(k+1)",
                  [&] { return json{{"level", k}, {"fibre_total", total}}; });
    }
    rec.count();
  }
}

void map_tower_composition(const Context& c, Rng& rng, Recorder& rec) {
  const int dim = c.m.dim();
  const auto whole = ClopenManifold::whole(c.p, dim, c.s.depth + 2);
  // Deepest level at which the ambient Z_p^m can still be sampled one level further down.
  int depth = 0;
  while (depth < c.s.depth && !level_too_large(whole, depth + 2, kMaxSampledPoints)) ++depth;
  if (depth == 0) return rec.skip("sampling Z_p^m at level 2 exceeds 50000 points");
  if (depth < c.s.depth) rec.skip("levels above " + std::to_string(depth) + " exceed 50000 sample points");
  const auto id = MapTower::identity(c.m, depth);
  for (std::uint64_t t = 0; t < trials(c, 5) && !rec.failed(); ++t) {
    std::vector<std::vector<std::int64_t>> fp, gp;
    for (int i = 0; i < dim; ++i) {
      fp.push_back(random_poly(rng));
      gp.push_back(random_poly(rng));
    }
    const auto f = poly_oracle(c.p, fp), g = poly_oracle(c.p, gp);
    const PointOracle fg = [&](std::span<const PadicApprox> x) { return f(g(x)); };
    const auto ft = project_tower(f, whole, whole, depth);
    const auto gt = project_tower(g, c.m, whole, depth);
    const auto composed = compose_towers(ft, gt);
    const auto direct = project_tower(fg, c.m, whole, depth);
    for (int k = 1; k <= depth; ++k) {
      rec.require(composed.at(k) == direct.at(k), "(f o g)_k = f_k o g_k", [&] {
        return json{{"level", k}, {"f", fp}, {"g", gp}, {"composed", level_map_json(composed.at(k))},
                    {"projected", level_map_json(direct.at(k))}};
      });
    }
    rec.require(compose_towers(gt, id) == gt, "g o id = g", [&] { return json{{"g", gp}}; });
    rec.count();
  }
}

void perm_tower_group(const Context& c, Rng& rng, Recorder& rec) {
  if (level_too_large(c.m, c.s.depth, kMaxLevelPoints)) return rec.skip("M_K has more than 20000 points");
  const auto id = PermTower::identity(c.m, c.s.depth);
  for (std::uint64_t t = 0; t < trials(c, 5) && !rec.failed(); ++t) {
    const auto a = random_tower(c.m, c.s.depth, rng.next());
    const auto b = random_tower(c.m, c.s.depth, rng.next());
    const auto d = random_tower(c.m, c.s.depth, rng.next());
    auto detail = [&] { return json{{"a", tower_images(a)}, {"b", tower_images(b)}}; };
    const auto ai = invert(a);
    const auto ab = compose(a, b);
    rec.require(compose(a, ai) == id && compose(ai, a) == id, "s o s^-1 = id", detail);
    rec.require(invert(ai) == a, "(s^-1)^-1 = s", detail);
    rec.require(compose(a, id) == a && compose(id, a) == a, "s o id = id o s = s", detail);
    rec.require(compose(ab, d) == compose(a, compose(b, d)), "associativity", detail);
    for (int k = 1; k <= c.s.depth; ++k) {
      rec.require(ai.at(k) == invert(a.at(k)), "pi_k(s^-1) = s_k^-1", detail);
      rec.require(ab.at(k) == compose(a.at(k), b.at(k)), "(s o t)_k = s_k o t_k", detail);
    }
    rec.count();
  }
}

void based_perm_subgroup(const Context& c, Rng& rng, Recorder& rec) {
  if (level_too_large(c.m, c.s.depth, kMaxLevelPoints)) return rec.skip("M_K has more than 20000 points");
  for (std::uint64_t t = 0; t < trials(c, 5) && !rec.failed(); ++t) {
    const auto a = random_based_tower(c.m, c.s.depth, rng.next());
    const auto b = random_based_tower(c.m, c.s.depth, rng.next());
    for (const auto& x : {compose(a, b), invert(a)}) {
      for (int k = 1; k <= c.s.depth; ++k) {
        const auto& level = x.tower().at(k);
        const auto& base = *level.domain().base_point();
        rec.require(level(base) == base, "based towers are closed under compose and invert", [&] {
          return json{{"level", k}, {"a", tower_images(a.tower())}, {"b", tower_images(b.tower())}};
        });
      }
    }
    rec.count();
  }
}

void random_lift_section(const Context& c, Rng& rng, Recorder& rec) {
  const int first = std::max(1, c.m.resolution());
  if (first >= c.s.depth) return rec.skip("no level between the resolution and K - 1");
  if (level_too_large(c.m, c.s.depth, kMaxLevelPoints)) return rec.skip("M_K has more than 20000 points");
  for (std::uint64_t t = 0; t < trials(c, 5) && !rec.failed(); ++t) {
    const int k = static_cast<int>(rng.between(first, c.s.depth - 1));
    const int l = static_cast<int>(rng.between(k + 1, c.s.depth));
    const auto sigma = random_level_perm(discretize(c.m, k), rng.next());
    const std::uint64_t seed = rng.next();
    const auto lift = random_lift(c.m, sigma, l, seed);
    auto detail = [&] { return json{{"level", k}, {"target", l}, {"sigma", sigma.image()}, {"lift", lift.image()}}; };
    rec.require(reduces_to(lift, sigma), "a lift reduces to the permutation it lifts", detail);
    rec.require(random_lift(c.m, sigma, l, seed) == lift, "lifts are determined by the seed", detail);
    rec.count();
  }
}

void hom_group_order(const Context& c, Rng&, Recorder& rec) {
  for (int k = 1; k <= c.s.depth; ++k) {
    GroupOrder g;
    try {
      g = group_order(c.m, k);
    } catch (const Error& e) {
      if (e.code() != Errc::TooLarge) throw;
      rec.skip("card(M_k) above 20000 from level " + std::to_string(k));
      break;
    }
    Integer fact = 1;
    for (Integer i = 2; i <= g.points; ++i) fact *= i;
    auto detail = [&] {
      return json{{"level", k}, {"points", to_string(g.points)}, {"factorial_exponent", g.factorial_exponent},
                  {"verified_exponent", g.verified_exponent}, {"literal_exponent", g.literal_exponent}};
    };
    rec.require(g.order == fact, "|Hom(M_k)| = n_k!", detail);
    rec.require(g.factorial_divides, "(p^b)! divides n_k! for p^b <= n_k", detail);
    rec.require(g.verified_divides, "p^(m min(k - s_i)) divides n_k", detail);
    const auto n = static_cast<std::size_t>(g.points);
    if (n <= c.s.bounds.max_perm_points) {
      const auto mk = discretize(c.m, k);
      const auto all = enumerate_level_perms(mk, c.s.bounds.max_perm_points);
      rec.require(Integer(all.size()) == fact, "enumeration of Hom(M_k) has n_k! elements", detail);
      if (n <= 5) {
        std::set<std::vector<std::size_t>> images;
        for (const auto& x : all) images.insert(x.image());
        rec.require(images.size() == all.size(), "enumerated permutations are distinct", detail);
        const auto id = LevelPerm::identity(mk);
        for (const auto& x : all) {
          rec.require(compose(x, invert(x)) == id && compose(x, id) == x, "inverse and identity laws", detail);
          for (const auto& y : all) {
            rec.require(images.contains(compose(x, y).image()), "closure under composition", detail);
          }
        }
        if (n <= 4) {
          for (const auto& x : all) {
            for (const auto& y : all) {
              const auto xy = compose(x, y);
              for (const auto& z : all) {
                rec.require(compose(xy, z) == compose(x, compose(y, z)), "associativity", detail);
              }
            }
          }
        }
      }
    }
    rec.count();
  }
}

void weak_metric(const Context& c, Rng& rng, Recorder& rec) {
  if (level_too_large(c.m, c.s.depth, kMaxLevelPoints)) return rec.skip("M_K has more than 20000 points");
  auto direct = [&](const PermTower& a, const PermTower& b) -> Rational {
    for (int k = 1; k <= a.depth(); ++k) {
      if (a.at(k).image() != b.at(k).image()) return Rational(1) / Rational(integer_power(c.p, k));
    }
    return 0;
  };
  for (std::uint64_t t = 0; t < c.s.bounds.samples && !rec.failed(); ++t) {
    const auto a = random_tower(c.m, c.s.depth, rng.next());
    const auto b = random_tower(c.m, c.s.depth, rng.next());
    const auto d = random_tower(c.m, c.s.depth, rng.next());
    const auto ab = weak_distance(a, b), bd = weak_distance(b, d), ad = weak_distance(a, d);
    auto detail = [&] {
      return json{{"d(a,b)", to_string(ab)}, {"d(b,c)", to_string(bd)}, {"d(a,c)", to_string(ad)}};
    };
    rec.require(ab == direct(a, b) && ad == direct(a, d), "d = p^-(first disagreeing level)", detail);
    rec.require(ab == weak_distance(b, a), "symmetry", detail);
    rec.require(weak_distance(a, a) == 0, "d(s, s) = 0", detail);
    rec.require(ad <= std::max(ab, bd), "strong triangle inequality", detail);
    rec.count();
  }
}

void mahler_roundtrip(const Context& c, Rng& rng, Recorder& rec) {
  for (std::uint64_t t = 0; t < c.s.bounds.samples * 2 && !rec.failed(); ++t) {
    const int max_index = static_cast<int>(rng.between(0, 8));
    const int K = static_cast<int>(rng.between(1, 6));
    std::vector<Integer> table;
    for (int i = 0; i <= max_index; ++i) table.push_back(Integer(rng.between(-500, 500)));
    const IntegerOracle f = [&](const Integer& x) { return table[static_cast<std::size_t>(x)]; };
    const auto series = mahler_coefficients(f, c.p, max_index, K);
    const Integer mod = integer_power(c.p, K);
    auto detail = [&] {
      json tj = json::array();
      for (const auto& v : table) tj.push_back(to_string(v));
      return json{{"table", tj}, {"precision", K}};
    };
    for (int m = 0; m <= max_index; ++m) {
      Integer a = 0;
      for (int j = 0; j <= m; ++j) {
        const Integer term = binomial(Integer(m), static_cast<unsigned>(j)) * table[static_cast<std::size_t>(j)];
        a += (m - j) % 2 ? -term : term;
      }
      rec.require(series.coefficients[static_cast<std::size_t>(m)].value() == mod_floor(a, mod),
                  "a_m = sum_j (-1)^(m-j) C(m,j) f(j)", detail);
    }
    for (int x = 0; x <= max_index; ++x) {
      const auto value = mahler_eval(series, PadicApprox::from_integer(c.p, x, series.guard_precision()));
      rec.require(value.value() == mod_floor(table[static_cast<std::size_t>(x)], mod),
                  "sum_m a_m C(x,m) reproduces f on 0..M", detail);
    }
    rec.count();
  }
}

void polynomial_projection(const Context& c, Rng& rng, Recorder& rec) {
  const auto zp = ClopenManifold::whole(c.p, 1, c.s.depth + 3);
  int kmax = 0;
  for (int k = 1; k <= c.s.depth; ++k) {
    if (integer_power(c.p, k + 2) <= kMaxSampledPoints) kmax = k;
  }
  if (kmax == 0) return rec.skip("sampling Z_p at level 3 exceeds 50000 points");
  for (std::uint64_t t = 0; t < trials(c, 5) && !rec.failed(); ++t) {
    const int k = static_cast<int>(rng.between(1, kmax));
    // Unit-ball coefficients given by digits, not just small integers.
    std::vector<PadicApprox> coeffs;
    const int degree = static_cast<int>(rng.between(0, 3));
    for (int i = 0; i <= degree; ++i) coeffs.push_back(random_padic(c.p, k + 2, rng));
    const PointOracle f = [&](std::span<const PadicApprox> x) {
      const int prec = std::min(x[0].precision(), k + 2);
      Integer acc = 0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x[0].value() + it->value();
      return std::vector<PadicApprox>{PadicApprox::from_integer(c.p, acc, prec)};
    };
    auto detail = [&] {
      json cj = json::array();
      for (const auto& a : coeffs) cj.push_back(to_string(a.value()));
      return json{{"level", k}, {"coefficients", cj}};
    };
    std::optional<LevelMap> sampled;
    try {
      sampled = project_function(f, zp, zp, k, k + 2);
    } catch (const Error& e) {
      if (e.code() != Errc::NotLevelCompatible) throw;
      rec.require(false, "polynomial values depend only on x mod p^k", detail);
      break;
    }
    rec.require(project_polynomial(coeffs, zp, k) == *sampled, "pi_k(sum a_i x^i) = sum (a_i)_k x(k)^i", detail);
    rec.count();
  }
}

void loop_monoid_laws(const Context& c, Rng& rng, Recorder& rec) {
  const LevelCodomain nl(discretize(c.n, c.s.bounds.loop_level));
  const auto classes =
      enumerate_classes(c.s.bounds.domain_size, nl, c.s.bounds.max_support, c.s.bounds.max_classes);
  const LevelLoopClass unit(nl);
  auto law = [&](const LevelLoopClass& a, const LevelLoopClass& b, const LevelLoopClass& d) {
    auto detail = [&] { return json{{"a", class_json(a)}, {"b", class_json(b)}, {"c", class_json(d)}}; };
    const auto ab = wedge_compose(a, b);
    rec.require(wedge_compose(a, unit) == a, "unit", detail);
    rec.require(ab == wedge_compose(b, a), "commutativity", detail);
    rec.require(wedge_compose(ab, d) == wedge_compose(a, wedge_compose(b, d)), "associativity", detail);
    rec.require(!(wedge_compose(a, d) == wedge_compose(b, d)) || a == b, "cancellation", detail);
    rec.count();
  };
  if (classes.size() <= kExhaustiveClasses) {
    for (const auto& a : classes) {
      for (const auto& b : classes) {
        for (const auto& d : classes) law(a, b, d);
      }
    }
  } else {
    for (std::uint64_t t = 0; t < c.s.bounds.samples * 20; ++t) {
      law(classes[rng.below(classes.size())], classes[rng.below(classes.size())], classes[rng.below(classes.size())]);
    }
  }

  // Connecting maps and towers over N_1..N_K.
  const auto codomains = codomain_tower(c.n, 1, c.s.depth);
  const auto& top = codomains.back();
  const auto top_values = top.nonzero_values();
  if (top_values.empty()) return;
  auto random_class = [&] {
    std::vector<LevelLoopClass::Entry> e;
    for (auto i = rng.below(c.s.bounds.max_support + 2); i > 0; --i) {
      e.emplace_back(top_values[rng.below(top_values.size())], 1);
    }
    return LevelLoopClass(top, e);
  };
  for (std::uint64_t t = 0; t < c.s.bounds.samples && !rec.failed(); ++t) {
    const auto a = random_class(), b = random_class();
    auto detail = [&] { return json{{"a", class_json(a)}, {"b", class_json(b)}}; };
    for (std::size_t j = 0; j + 1 < codomains.size(); ++j) {
      rec.require(connecting(wedge_compose(a, b), codomains[j]) ==
                      wedge_compose(connecting(a, codomains[j]), connecting(b, codomains[j])),
                  "connecting maps are monoid homomorphisms", detail);
      for (std::size_t i = j; i + 1 < codomains.size(); ++i) {
        rec.require(connecting(connecting(a, codomains[i]), codomains[j]) == connecting(a, codomains[j]),
                    "connecting(k <- l) o connecting(l <- l') = connecting(k <- l')", detail);
      }
    }
    // Levelwise wedge of projected loops is the projected loop of the disjoint union.
    const auto top_points = top.values().points();
    std::vector<std::pair<DomainLabel, std::vector<PadicApprox>>> fa, fb;
    for (DomainLabel x = 1; x <= 2; ++x) {
      fa.emplace_back(x, lift_to_padic(top_points[rng.below(top_points.size())], c.s.depth));
      fb.emplace_back(x + 100, lift_to_padic(top_points[rng.below(top_points.size())], c.s.depth));
    }
    auto both = fa;
    both.insert(both.end(), fb.begin(), fb.end());
    rec.require(wedge_compose(project_loop(0, fa, codomains), project_loop(0, fb, codomains)) ==
                    project_loop(0, both, codomains),
                "towers are closed under levelwise wedge", detail);
    rec.count();
  }
}

void canonical_orbits(const Context& c, Rng&, Recorder& rec) {
  const LevelCodomain nl(discretize(c.n, c.s.bounds.loop_level));
  const auto values = nl.values().points();
  const std::size_t d = std::min<std::size_t>(c.s.bounds.domain_size, 4);
  std::uint64_t maps = 1;
  for (std::size_t i = 1; i < d; ++i) maps *= values.size();
  if (maps > kMaxOrbitMaps) return rec.skip("more than 4096 based maps to enumerate");
  std::map<std::vector<std::size_t>, std::vector<LevelLoopClass::Entry>> class_of_orbit;
  std::map<std::vector<LevelLoopClass::Entry>, std::vector<std::size_t>> orbit_of_class;
  std::vector<std::size_t> f(d, 0);
  const std::size_t zero = *nl.values().index_of(nl.zero());
  std::fill(f.begin(), f.end(), zero);
  for (std::uint64_t code = 0; code < maps; ++code) {
    std::uint64_t rest = code;
    for (std::size_t x = 1; x < d; ++x) {
      f[x] = static_cast<std::size_t>(rest % values.size());
      rest /= values.size();
    }
    // Orbit representative: least relabelling under permutations of the non-base labels.
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> orbit = f;
    do {
      std::vector<std::size_t> g(d);
      for (std::size_t x = 0; x < d; ++x) g[x] = f[perm[x]];
      orbit = std::min(orbit, g);
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    BasedFiniteMap bm{0, {}};
    for (std::size_t x = 1; x < d; ++x) bm.assignments.emplace_back(x, values[f[x]]);
    const auto canon = canonicalize(bm, nl).entries();
    auto [it1, new_orbit] = class_of_orbit.emplace(orbit, canon);
    auto [it2, new_class] = orbit_of_class.emplace(canon, orbit);
    auto detail = [&] {
      json mj = json::array();
      for (auto i : f) mj.push_back(point_json(values[i]));
      return json{{"map", mj}};
    };
    rec.require(it1->second == canon, "maps in one based-bijection orbit have equal canonical forms", detail);
    rec.require(it2->second == orbit, "equal canonical forms lie in one based-bijection orbit", detail);
    rec.count();
  }
  rec.require(enumerate_classes(d, nl, d, c.s.bounds.max_classes).size() == class_of_orbit.size(),
              "enumerated classes are exactly the orbits",
              [&] { return json{{"orbits", class_of_orbit.size()}, {"domain_size", d}}; });
}

void grothendieck_structure(const Context& c, Rng& rng, Recorder& rec) {
  const LevelCodomain nl(discretize(c.n, c.s.bounds.loop_level));
  const auto classes = enumerate_classes(std::min<std::size_t>(c.s.bounds.domain_size, 4), nl,
                                         std::min<std::size_t>(c.s.bounds.max_support, 3), c.s.bounds.max_classes);
  const std::size_t limit = std::min<std::size_t>(classes.size(), kExhaustiveClasses);
  for (std::size_t i = 0; i < limit; ++i) {
    for (std::size_t j = 0; j < limit; ++j) {
      const auto& a = classes[i];
      const auto& b = classes[j];
      auto detail = [&] { return json{{"a", class_json(a)}, {"b", class_json(b)}}; };
      rec.require((embed(a) == embed(b)) == (a == b), "embed is injective", detail);
      rec.require(embed(wedge_compose(a, b)) == embed(a) + embed(b), "embed(a v b) = embed(a) + embed(b)", detail);
      const auto x = embed(a) - embed(b);
      const auto [pos, neg] = as_difference(x, nl);
      rec.require(embed(pos) - embed(neg) == x, "every element is a difference of classes", detail);
      rec.count();
    }
  }
  const auto values = nl.nonzero_values();
  for (std::uint64_t t = 0; t < trials(c, 1) && !rec.failed(); ++t) {
    std::map<ResidueVector, Integer> w;
    for (const auto& v : values) w[v] = Integer(rng.between(-100, 100));
    const MonoidHom h = [&](const LevelLoopClass& cl) {
      Integer s = 0;
      for (const auto& [v, m] : cl.entries()) s += w.at(v) * m;
      return s;
    };
    const auto ext = universal_extend(h, nl);
    for (std::size_t i = 0; i < limit; ++i) {
      rec.require(ext(embed(classes[i])) == h(classes[i]), "h^ o embed = h",
                  [&] { return json{{"class", class_json(classes[i])}}; });
    }
    rec.require(ext.weights() == w, "the extension is determined by the generators");
    rec.count();
  }
  for (int k = 1; k <= c.s.depth; ++k) {
    const LevelCodomain nk(discretize(c.n, k));
    rec.require(free_rank(nk) == nk.values().size() - 1 && free_rank(nk) == nk.nonzero_values().size(),
                "rank = card(N_k) - 1", [&] { return json{{"level", k}, {"codomain_size", nk.values().size()}}; });
  }
}

void completion_characters(const Context& c, Rng& rng, Recorder& rec) {
  const int s = c.s.complete.precision;
  {
    std::vector<IntVector> seq;
    for (const auto& v : geometric_fixture(c.p.value(), s)) seq.push_back(IntVector::from_dense(v));
    const auto limit = complete(seq, c.p, s);
    rec.require(limit == character(IntVector::from_dense(std::vector<Integer>{-1}), c.p, s),
                "geometric partial sums converge to -1", [&] { return json{{"limit", to_string(limit.at(1).value())}}; });
    rec.count();
  }
  const Integer mod = integer_power(c.p, s);
  auto random_vector = [&] {
    std::map<IndexLabel, Integer> e;
    for (IndexLabel i = 1; i <= 5; ++i) e[i] = Integer(rng.between(-100000, 100000));
    return IntVector(e);
  };
  for (std::uint64_t t = 0; t < c.s.bounds.samples && !rec.failed(); ++t) {
    const auto x = random_vector(), y = random_vector();
    rec.require(character(x + y, c.p, s) == character(x, c.p, s) + character(y, c.p, s),
                "eta(x + y) = eta(x) + eta(y)", [&] { return json{{"x0", to_string(x.at(1))}, {"y0", to_string(y.at(1))}}; });
    std::map<IndexLabel, Integer> target;
    for (IndexLabel i = 1; i <= 4; ++i) target[rng.below(40) + 1] = random_padic(c.p, s, rng).value();
    const PadicVector tv(c.p, s, target);
    rec.require(character(density_witness(tv), c.p, s) == tv, "eta(density_witness(t)) = t");
    rec.count();
  }
  if (mod <= 100000) {
    for (std::uint64_t r = 0; Integer(r) < mod; ++r) {
      const PadicVector tv(c.p, s, {{1, Integer(r)}});
      rec.require(character(density_witness(tv), c.p, s) == tv, "eta is surjective",
                  [&] { return json{{"residue", r}}; });
    }
    rec.count();
  } else {
    rec.skip("exhaustive surjectivity needs p^s <= 100000");
  }
}

void perm_tower_fixture(const Context& c, Rng&, Recorder& rec) {
  const auto& levels = *c.s.perm_tower;
  std::vector<LevelPerm> perms;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    try {
      perms.emplace_back(discretize(c.m, k), levels[i]);
    } catch (const Error& e) {
      rec.require(false, "each level is a bijection of M_k",
                  [&] { return json{{"level", k}, {"image", levels[i]}, {"error", e.what()}}; });
      return;
    }
  }
  for (std::size_t l = 0; l < perms.size(); ++l) {
    for (std::size_t k = 0; k < l; ++k) {
      rec.require(reduces_to(perms[l], perms[k]), "pi^l_k o s_l = s_k o pi^l_k", [&] {
        return json{{"fine_level", l + 1}, {"coarse_level", k + 1}, {"fine", levels[l]}, {"coarse", levels[k]}};
      });
    }
  }
  rec.count();
}

std::vector<CheckDef> all_checks(const Scenario& s) {
  std::vector<CheckDef> out{
      {"level-ring-homomorphism", level_ring_homomorphism},
      {"manifold-discretization", manifold_discretization},
      {"map-tower-composition", map_tower_composition},
      {"perm-tower-group", perm_tower_group},
      {"based-perm-subgroup", based_perm_subgroup},
      {"random-lift-section", random_lift_section},
      {"hom-group-order", hom_group_order},
      {"weak-metric-ultrametric", weak_metric},
      {"mahler-roundtrip", mahler_roundtrip},
      {"polynomial-projection", polynomial_projection},
      {"loop-monoid-laws", loop_monoid_laws},
      {"canonical-orbits", canonical_orbits},
      {"grothendieck-structure", grothendieck_structure},
      {"completion-characters", completion_characters},
  };
  if (s.perm_tower) out.push_back({"perm-tower-fixture", perm_tower_fixture});
  return out;
}

CheckResult run_one(const Context& ctx, const CheckDef& def, bool timings) {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(derive_seed(ctx.s.seed, def.name));
  Recorder rec;
  try {
    def.run(ctx, rng, rec);
  } catch (const Error& e) {
    if (e.code() == Errc::TooLarge) {
      rec.skip(e.what());
    } else {
      rec.require(false, "no unexpected error", [&] { return json{{"error", e.what()}}; });
    }
  }
  auto result = std::move(rec).finish(def.name);
  if (timings) {
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return result;
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Skipped:
      return "skipped";
  }
  return "?";
}

std::vector<std::string> check_names(const Scenario& s) {
  std::vector<std::string> out;
  for (const auto& c : all_checks(s)) out.push_back(c.name);
  return out;
}

std::vector<CheckResult> run_verify(const Scenario& s, const RunOptions& options) {
  const Context ctx{s, Prime(s.prime), build_manifold(s), build_codomain(s)};
  const auto checks = all_checks(s);
  std::vector<CheckResult> results(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < checks.size(); i = next++) results[i] = run_one(ctx, checks[i], options.timings);
  };
  const unsigned jobs = std::clamp<unsigned>(options.jobs, 1, static_cast<unsigned>(checks.size()));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(),
                      [](const CheckResult& r) { return r.status == CheckStatus::Fail; });
}

json verify_body(const std::vector<CheckResult>& results) {
  json checks = json::array();
  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& r : results) {
    json j{{"name", r.name}, {"status", std::string(to_string(r.status))}, {"cases", r.cases}};
    if (!r.witness.is_null()) j["witness"] = r.witness;
    if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
    checks.push_back(std::move(j));
    (r.status == CheckStatus::Pass ? passed : r.status == CheckStatus::Fail ? failed : skipped) += 1;
  }
  return {{"checks", checks},
          {"summary", {{"passed", passed}, {"failed", failed}, {"skipped", skipped}}},
          {"status", failed == 0 ? "pass" : "fail"}};
}

std::string verify_csv(const std::vector<CheckResult>& results) {
  std::string out = "name,status,cases,law\n";
  for (const auto& r : results) {
    std::string law;
    if (r.witness.contains("law")) law = r.witness["law"].get<std::string>();
    if (r.witness.contains("reason")) law = r.witness["reason"].get<std::string>();
    std::string quoted = "\"";
    for (char ch : law) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    quoted += "\"";
    out += r.name + "," + std::string(to_string(r.status)) + "," + std::to_string(r.cases) + "," + quoted + "\n";
  }
  return out;
}

}  // namespace profinite::cli
