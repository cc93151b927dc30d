#include <gtest/gtest.h>

#include <set>

#include "profinite/level_rings.hpp"
#include "profinite/rng.hpp"
#include "support.hpp"

namespace profinite {
namespace {

using testing::upow;

Residue r(std::uint64_t p, int k, std::uint64_t v) { return Residue(Prime(p), k, v); }

TEST(Prime, RejectsComposites) {
  EXPECT_NO_THROW(Prime(2));
  EXPECT_NO_THROW(Prime(97));
  for (std::uint64_t n : {0u, 1u, 4u, 9u, 91u}) {
    try {
      Prime p(n);
      FAIL() << n << " accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::NotPrime);
    }
  }
}

TEST(Residue, CanonicalRepresentative) {
  EXPECT_EQ(r(3, 2, 20).value(), 2);
  EXPECT_EQ(Residue(Prime(3), 2, -1).value(), 8);
  EXPECT_THROW(Residue(Prime(3), 0, 1), Error);
}

TEST(RingOps, Examples) {
  EXPECT_EQ(add(r(3, 2, 7), r(3, 2, 5)), r(3, 2, 3));
  EXPECT_EQ(neg(r(5, 3, 0)), r(5, 3, 0));
  for (std::uint64_t x = 0; x < 9; ++x) EXPECT_EQ(mul(r(3, 2, x), r(3, 2, 1)), r(3, 2, x));
}

TEST(RingOps, LevelMismatch) {
  try {
    add(r(3, 2, 1), r(3, 1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::LevelMismatch);
  }
  EXPECT_THROW(mul(r(2, 2, 1), r(3, 2, 1)), Error);
}

TEST(Reduce, Examples) {
  EXPECT_EQ(reduce(r(3, 3, 17), 1), r(3, 1, 2));
  EXPECT_EQ(reduce(r(5, 2, 13), 2), r(5, 2, 13));
  try {
    reduce(r(3, 1, 1), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::LevelMismatch);
  }
}

TEST(Reduce, HomomorphismAgainstDirectModularArithmetic) {
  Rng rng(20240917);
  for (std::uint64_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const int l = static_cast<int>(rng.between(1, 5));
      const int k = static_cast<int>(rng.between(1, l));
      const std::uint64_t ml = upow(p, l), mk = upow(p, k);
      const std::uint64_t a = rng.below(ml), b = rng.below(ml);
      const Residue ra = r(p, l, a), rb = r(p, l, b);
      EXPECT_EQ(reduce(ra * rb, k).value(), (a * b % ml) % mk);
      EXPECT_EQ(reduce(ra + rb, k).value(), ((a + b) % ml) % mk);
      EXPECT_EQ(reduce(ra * rb, k), reduce(ra, k) * reduce(rb, k));
      EXPECT_EQ(reduce(ra + rb, k), reduce(ra, k) + reduce(rb, k));
    }
  }
}

TEST(Reduce, CocycleLawExhaustive) {
  for (std::uint64_t p : {2u, 3u}) {
    for (int top = 1; top <= 4; ++top) {
      for (std::uint64_t v = 0; v < upow(p, top); ++v) {
        const Residue x = r(p, top, v);
        for (int l = 1; l <= top; ++l) {
          for (int k = 1; k <= l; ++k) EXPECT_EQ(reduce(reduce(x, l), k), reduce(x, k));
        }
      }
    }
  }
}

TEST(Project, Examples) {
  const Prime two(2), three(3);
  EXPECT_EQ(project(PadicApprox(two, {1, 1, 1}), 3), r(2, 3, 7));
  EXPECT_EQ(project(PadicApprox(three, {2, 0, 1}), 2), r(3, 2, 2));
  try {
    project(PadicApprox(three, {2, 0, 1}), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PrecisionExceeded);
  }
}

TEST(Project, ThreadCoherenceAndHomomorphism) {
  Rng rng(7);
  for (std::uint64_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 200; ++trial) {
      const int K = static_cast<int>(rng.between(1, 6));
      std::vector<std::uint64_t> dx, dy;
      for (int i = 0; i < K; ++i) {
        dx.push_back(rng.below(p));
        dy.push_back(rng.below(p));
      }
      const PadicApprox x(Prime(p), dx), y(Prime(p), dy);
      // x_k as the digit sum, computed directly.
      std::uint64_t xk = 0, pk = 1;
      for (int k = 1; k <= K; ++k) {
        xk += dx[static_cast<std::size_t>(k - 1)] * pk;
        pk *= p;
        EXPECT_EQ(project(x, k).value(), xk);
        for (int j = 1; j <= k; ++j) EXPECT_EQ(reduce(project(x, k), j), project(x, j));
      }
      // Sum and product of the digit towers, truncated to K digits, project to the ring operations.
      const PadicApprox sum = PadicApprox::from_integer(Prime(p), x.value() + y.value(), K);
      const PadicApprox prod = PadicApprox::from_integer(Prime(p), x.value() * y.value(), K);
      for (int k = 1; k <= K; ++k) {
        EXPECT_EQ(project(sum, k), project(x, k) + project(y, k));
        EXPECT_EQ(project(prod, k), project(x, k) * project(y, k));
      }
    }
  }
}

TEST(PadicApprox, NegativeIntegersHaveMaximalDigits) {
  const auto minus_one = PadicApprox::from_integer(Prime(3), -1, 4);
  for (auto d : minus_one.digits()) EXPECT_EQ(d, 2u);
  EXPECT_EQ(minus_one.value(), 80);
  EXPECT_THROW(PadicApprox(Prime(3), {3}), Error);
  EXPECT_THROW(PadicApprox(Prime(3), {}), Error);
}

TEST(FiberEnumerate, Examples) {
  EXPECT_EQ(fiber_enumerate(r(2, 1, 1), 2), (std::vector<Residue>{r(2, 2, 1), r(2, 2, 3)}));
  EXPECT_EQ(fiber_enumerate(r(3, 1, 0), 2), (std::vector<Residue>{r(3, 2, 0), r(3, 2, 3), r(3, 2, 6)}));
  try {
    fiber_enumerate(r(3, 2, 0), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::LevelMismatch);
  }
}

TEST(FiberEnumerate, MatchesExhaustiveScanAndPartitions) {
  Rng rng(99);
  for (std::uint64_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 30; ++trial) {
      const int l = static_cast<int>(rng.between(2, 4));
      const int k = static_cast<int>(rng.between(1, l - 1));
      const std::uint64_t a = rng.below(upow(p, k));
      std::set<std::uint64_t> scanned;
      for (std::uint64_t b = 0; b < upow(p, l); ++b) {
        if (b % upow(p, k) == a) scanned.insert(b);
      }
      std::set<std::uint64_t> got;
      for (const auto& x : fiber_enumerate(r(p, k, a), l)) got.insert(static_cast<std::uint64_t>(x.value()));
      EXPECT_EQ(got, scanned);
      EXPECT_EQ(got.size(), upow(p, l - k));
    }
    // The p^k fibres of reduce(l -> k) partition [0, p^l).
    const int l = 3, k = 1;
    std::multiset<std::uint64_t> all;
    for (std::uint64_t a = 0; a < upow(p, k); ++a) {
      for (const auto& x : fiber_enumerate(r(p, k, a), l)) all.insert(static_cast<std::uint64_t>(x.value()));
    }
    ASSERT_EQ(all.size(), upow(p, l));
    for (std::uint64_t b = 0; b < upow(p, l); ++b) EXPECT_EQ(all.count(b), 1u);
  }
}

TEST(ResidueVector, SharedLevelRequired) {
  const std::vector<Residue> bad{r(2, 1, 1), r(2, 2, 1)};
  EXPECT_THROW(ResidueVector(std::span<const Residue>(bad)), Error);
  const std::vector<Residue> good{r(2, 2, 1), r(2, 2, 3)};
  const ResidueVector v(good);
  EXPECT_EQ(reduce(v, 1), ResidueVector(Prime(2), 1, {1, 1}));
}

}  // namespace
}  // namespace profinite
