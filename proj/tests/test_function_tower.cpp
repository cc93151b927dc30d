#include <gtest/gtest.h>

#include "profinite/function_tower.hpp"
#include "profinite/rng.hpp"
#include "support.hpp"

namespace profinite {
namespace {

using testing::as_u64;
using testing::padic;
using testing::upow;

// Integer polynomial evaluated exactly, then truncated to the input's precision.
PointOracle polynomial_oracle(std::uint64_t p, std::vector<std::int64_t> coeffs) {
  return [p, coeffs](std::span<const PadicApprox> x) {
    const Integer v = x[0].value();
    Integer acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * v + *it;
    return std::vector<PadicApprox>{padic(p, acc, x[0].precision())};
  };
}

std::vector<std::int64_t> random_coeffs(Rng& rng) {
  std::vector<std::int64_t> c(rng.between(1, 4));
  for (auto& a : c) a = static_cast<std::int64_t>(rng.between(0, 40)) - 20;
  return c;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs(const LevelMap& f) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::size_t i = 0; i < f.domain().size(); ++i) {
    out.emplace_back(as_u64(f.domain()[i])[0], as_u64(f.codomain()[f.table()[i]])[0]);
  }
  return out;
}

using Table = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

TEST(ProjectFunction, Examples) {
  const auto z2 = ClopenManifold::whole(Prime(2), 1);
  EXPECT_EQ(pairs(project_function(polynomial_oracle(2, {0, 1}), z2, z2, 2)), (Table{{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
  EXPECT_EQ(pairs(project_function(polynomial_oracle(2, {1, 1}), z2, z2, 1)), (Table{{0, 1}, {1, 0}}));
}

TEST(ProjectFunction, DigitShiftIsNotLevelCompatible) {
  const auto z2 = ClopenManifold::whole(Prime(2), 1);
  PointOracle shift = [](std::span<const PadicApprox> x) {
    const Integer v = x[0].value();
    return std::vector<PadicApprox>{padic(2, (v - v % 2) / 2, x[0].precision())};
  };
  try {
    project_function(shift, z2, z2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotLevelCompatible);
  }
}

TEST(ProjectFunction, ValuesOutsideCodomain) {
  const auto z3 = ClopenManifold::whole(Prime(3), 1);
  const auto unit_ball = testing::balls_1d(3, {{0, 1}});
  try {
    project_function(polynomial_oracle(3, {1}), z3, unit_ball, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PointNotInManifold);
  }
}

TEST(ProjectFunction, PolynomialLevelMapsDependOnlyOnResidues) {
  Rng rng(2718);
  for (std::uint64_t p : {2u, 3u, 5u}) {
    const auto zp = ClopenManifold::whole(Prime(p), 1);
    for (int trial = 0; trial < 20; ++trial) {
      const auto coeffs = random_coeffs(rng);
      const int k = static_cast<int>(rng.between(1, 3));
      // Sampling two extra levels deep must not reveal any disagreement.
      EXPECT_NO_THROW(project_function(polynomial_oracle(p, coeffs), zp, zp, k, k + 2));
    }
  }
}

TEST(LevelMap, TableValidation) {
  const auto m1 = full_level_set(Prime(2), 1, 1);
  EXPECT_THROW(LevelMap(m1, m1, {0}), Error);
  EXPECT_THROW(LevelMap(m1, m1, {0, 2}), Error);
  EXPECT_THROW(LevelMap(m1, full_level_set(Prime(2), 2, 1), {0, 1}), Error);
}

TEST(MapTower, RejectsIncompatibleLevels) {
  const auto z2 = ClopenManifold::whole(Prime(2), 1);
  const auto m1 = discretize(z2, 1), m2 = discretize(z2, 2);
  // Level 2 is x -> x + 1, level 1 is the identity: 0 -> 1 at level 2 reduces to 0 -> 1, not 0 -> 0.
  try {
    MapTower({LevelMap::identity(m1), LevelMap(m2, m2, {1, 2, 3, 0})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TowerIncompatible);
  }
  EXPECT_NO_THROW(MapTower({LevelMap(m1, m1, {1, 0}), LevelMap(m2, m2, {1, 2, 3, 0})}));
}

TEST(MapTower, ProjectedTowersAreCoherent) {
  Rng rng(161);
  for (std::uint64_t p : {2u, 3u}) {
    const auto zp = ClopenManifold::whole(Prime(p), 1);
    for (int trial = 0; trial < 15; ++trial) {
      const auto tower = project_tower(polynomial_oracle(p, random_coeffs(rng)), zp, zp, 3);
      // Independent coherence check on raw residues.
      for (int l = 1; l <= 3; ++l) {
        for (int k = 1; k <= l; ++k) {
          const auto& fl = tower.at(l);
          const auto& fk = tower.at(k);
          const std::uint64_t mk = upow(p, k);
          for (std::size_t i = 0; i < fl.domain().size(); ++i) {
            const auto x = as_u64(fl.domain()[i])[0];
            const auto fx = as_u64(fl.codomain()[fl.table()[i]])[0];
            EXPECT_EQ(fx % mk, as_u64(fk(ResidueVector(Prime(p), k, {Integer(x % mk)})))[0]);
          }
        }
      }
    }
  }
}

TEST(ComposeTowers, Examples) {
  const auto z2 = ClopenManifold::whole(Prime(2), 1);
  const auto f = project_tower(polynomial_oracle(2, {1, 1}), z2, z2, 1);
  EXPECT_EQ(compose_towers(f, f), MapTower::identity(z2, 1));
  const auto g = project_tower(polynomial_oracle(2, {3, 0, 1}), z2, z2, 3);
  EXPECT_EQ(compose_towers(MapTower::identity(z2, 3), g), g);
  EXPECT_EQ(compose_towers(g, MapTower::identity(z2, 3)), g);
  try {
    compose_towers(f, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DomainMismatch);
  }
}

TEST(ComposeTowers, MatchesProjectionOfComposedOracle) {
  Rng rng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t p = trial % 2 ? 2 : 3;
    const int depth = static_cast<int>(rng.between(1, 3));
    const auto zp = ClopenManifold::whole(Prime(p), 1);
    const auto fo = polynomial_oracle(p, random_coeffs(rng));
    const auto go = polynomial_oracle(p, random_coeffs(rng));
    PointOracle fg = [&](std::span<const PadicApprox> x) {
      const auto gx = go(x);
      return fo(gx);
    };
    const auto f = project_tower(fo, zp, zp, depth);
    const auto g = project_tower(go, zp, zp, depth);
    EXPECT_EQ(compose_towers(f, g), project_tower(fg, zp, zp, depth));
  }
}

TEST(ComposeTowers, AssociativeWithIdentityUnit) {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint64_t p = trial % 2 ? 2 : 5;
    const auto zp = ClopenManifold::whole(Prime(p), 1);
    const int depth = 2;
    const auto a = project_tower(polynomial_oracle(p, random_coeffs(rng)), zp, zp, depth);
    const auto b = project_tower(polynomial_oracle(p, random_coeffs(rng)), zp, zp, depth);
    const auto c = project_tower(polynomial_oracle(p, random_coeffs(rng)), zp, zp, depth);
    EXPECT_EQ(compose_towers(a, compose_towers(b, c)), compose_towers(compose_towers(a, b), c));
    EXPECT_EQ(compose_towers(a, MapTower::identity(zp, depth)), a);
  }
}

// Direct finite-difference formula with Pascal-triangle binomials.
std::vector<Integer> mahler_oracle(const std::vector<Integer>& f, std::uint64_t modulus) {
  const std::size_t n = f.size();
  std::vector<std::vector<Integer>> c(n, std::vector<Integer>(n, 0));
  for (std::size_t m = 0; m < n; ++m) {
    c[m][0] = 1;
    for (std::size_t j = 1; j <= m; ++j) c[m][j] = c[m - 1][j - 1] + (j < m ? c[m - 1][j] : Integer(0));
  }
  std::vector<Integer> out;
  for (std::size_t m = 0; m < n; ++m) {
    Integer a = 0;
    for (std::size_t j = 0; j <= m; ++j) a += ((m - j) % 2 ? -1 : 1) * c[m][j] * f[j];
    a %= Integer(modulus);
    if (a < 0) a += modulus;
    out.push_back(a);
  }
  return out;
}

std::vector<Integer> values(const MahlerSeries& s) {
  std::vector<Integer> out;
  for (const auto& a : s.coefficients) out.push_back(a.value());
  return out;
}

TEST(Mahler, Examples) {
  const Prime p(5);
  EXPECT_EQ(values(mahler_coefficients([](const Integer&) { return Integer(7); }, p, 3, 2)),
            (std::vector<Integer>{7, 0, 0, 0}));
  EXPECT_EQ(values(mahler_coefficients([](const Integer& x) { return x; }, p, 3, 2)),
            (std::vector<Integer>{0, 1, 0, 0}));
  EXPECT_EQ(values(mahler_coefficients([](const Integer& x) { return x * x; }, p, 3, 2)),
            (std::vector<Integer>{0, 1, 2, 0}));
  EXPECT_EQ(values(mahler_coefficients([](const Integer& x) { return x * x; }, p, 3, 2)),
            mahler_oracle({0, 1, 4, 9}, 25));
}

TEST(Mahler, SquareAtThree) {
  const auto s = mahler_coefficients([](const Integer& x) { return x * x; }, Prime(2), 2, 3);
  EXPECT_EQ(s.guard_precision(), 4);
  EXPECT_EQ(mahler_eval(s, padic(2, 3, 4)).value(), 1);
  EXPECT_EQ(mahler_eval(s, padic(2, 0, 4)).value(), s.coefficients[0].value());
}

TEST(Mahler, GuardDigitsAreRequired) {
  // C(x, 2) at x = 0 and x = 2 agree modulo 2 in x but not in value.
  const auto s = mahler_coefficients([](const Integer& x) { return x * (x - 1) / 2; }, Prime(2), 2, 1);
  try {
    mahler_eval(s, padic(2, 0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PrecisionExceeded);
  }
  EXPECT_EQ(mahler_eval(s, padic(2, 0, 2)).value(), 0);
  EXPECT_EQ(mahler_eval(s, padic(2, 2, 2)).value(), 1);
}

TEST(Mahler, ReconstructsRandomTables) {
  Rng rng(404);
  for (std::uint64_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 30; ++trial) {
      const int max_index = static_cast<int>(rng.between(0, 9));
      const int K = static_cast<int>(rng.between(1, 4));
      std::vector<Integer> table;
      for (int i = 0; i <= max_index; ++i) table.push_back(Integer(rng.between(0, 1000)) - 500);
      const auto s = mahler_coefficients([&](const Integer& x) { return table[static_cast<std::size_t>(x)]; },
                                         Prime(p), max_index, K);
      EXPECT_EQ(values(s), mahler_oracle(table, upow(p, K)));
      for (int n = 0; n <= max_index; ++n) {
        const auto got = mahler_eval(s, padic(p, n, s.guard_precision()));
        Integer want = table[static_cast<std::size_t>(n)] % Integer(upow(p, K));
        if (want < 0) want += upow(p, K);
        EXPECT_EQ(got.value(), want);
        EXPECT_EQ(got.precision(), K);
      }
    }
  }
}

TEST(ProjectPolynomial, Examples) {
  const auto z3 = ClopenManifold::whole(Prime(3), 1);
  const std::vector<PadicApprox> square{padic(3, 0, 2), padic(3, 0, 2), padic(3, 1, 2)};
  EXPECT_EQ(pairs(project_polynomial(square, z3, 1)), (Table{{0, 0}, {1, 1}, {2, 1}}));
  const std::vector<PadicApprox> zero{padic(3, 0, 2)};
  for (const auto& [x, fx] : pairs(project_polynomial(zero, z3, 2))) EXPECT_EQ(fx, 0u) << x;
}

TEST(ProjectPolynomial, AgreesWithProjectFunction) {
  Rng rng(1234);
  int cases = 0;
  for (std::uint64_t p : {2u, 3u, 5u}) {
    const auto zp = ClopenManifold::whole(Prime(p), 1);
    for (int trial = 0; trial < 67; ++trial) {
      const int k = static_cast<int>(rng.between(1, p == 5 ? 3 : 4));
      const auto coeffs = random_coeffs(rng);
      std::vector<PadicApprox> padic_coeffs;
      for (auto a : coeffs) padic_coeffs.push_back(padic(p, a, k));
      EXPECT_EQ(project_polynomial(padic_coeffs, zp, k), project_function(polynomial_oracle(p, coeffs), zp, zp, k));
      ++cases;
    }
  }
  EXPECT_GE(cases, 200);
}

}  // namespace
}  // namespace profinite
