#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hcount/arith.hpp"
#include "hcount/counting.hpp"
#include "hcount/numeric.hpp"

using namespace hcount;

namespace {

// Per-point enumeration of {(a, b) in Z^2 : a^2 + b^2 = m}.
std::uint32_t r2_enumerate(u64 m) {
  std::uint32_t c = 0;
  for (u64 a = 0; a * a <= m; ++a) {
    const u64 rest = m - a * a;
    const u64 b = static_cast<u64>(std::llround(std::sqrt(static_cast<double>(rest))));
    for (u64 bb : {b == 0 ? 0 : b - 1, b, b + 1}) {
      if (bb * bb == rest) {
        c += (a == 0 ? 1 : 2) * (bb == 0 ? 1 : 2);
        break;
      }
    }
  }
  return c;
}

// rho by direct double loop over (m, n) with m >= 0, n in Z.
std::vector<u64> rho_direct(u64 hi, const R2Table& r2) {
  std::vector<u64> rho(hi, 0);
  for (u64 m = 0; m * m < hi; ++m) {
    for (i64 n = -static_cast<i64>(hi); n <= static_cast<i64>(hi); ++n) {
      const u64 n2 = static_cast<u64>(n * n);
      if (n2 >= hi) continue;
      const u64 l = m * m + n2;
      if (l < hi) rho[l] += r2[m];
    }
  }
  return rho;
}

}  // namespace

TEST(Isqrt, FloorExamples) {
  EXPECT_EQ(isqrt_floor(0), 0u);
  EXPECT_EQ(isqrt_floor(15), 3u);
  EXPECT_EQ(isqrt_floor(16), 4u);
  EXPECT_EQ(isqrt_floor(static_cast<u128>(1000000000000000000ULL)), 1000000000u);
  EXPECT_EQ(isqrt_floor(static_cast<u128>(1000000000000000000ULL) - 1), 999999999u);
}

TEST(Isqrt, FloorExhaustiveUpToMillion) {
  for (u64 v = 0; v <= 1000000; ++v) {
    const u128 k = isqrt_floor(v);
    ASSERT_LE(k * k, v);
    ASSERT_GT((k + 1) * (k + 1), v);
  }
}

TEST(Isqrt, FloorNearTopOfRange) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    const u64 k = rng() >> 1;  // k < 2^63, so k^2 < 2^126
    const u128 sq = static_cast<u128>(k) * k;
    ASSERT_EQ(isqrt_floor(sq), k);
    if (k > 0) {
      ASSERT_EQ(isqrt_floor(sq - 1), k - 1);
    }
    ASSERT_EQ(isqrt_floor(sq + 2 * static_cast<u128>(k)), k);
  }
}

TEST(Isqrt, StrictExamples) {
  EXPECT_EQ(isqrt_strict(1), 0u);
  EXPECT_EQ(isqrt_strict(16), 3u);
  EXPECT_EQ(isqrt_strict(17), 4u);
  EXPECT_FALSE(isqrt_strict(0).has_value());
  EXPECT_FALSE(isqrt_strict(-5).has_value());
}

TEST(R2Sieve, Examples) {
  EXPECT_EQ(r2_sieve(0, 6).values, (std::vector<std::uint32_t>{1, 4, 4, 0, 4, 8}));
  EXPECT_EQ(r2_sieve(25, 1).values, (std::vector<std::uint32_t>{12}));
  EXPECT_EQ(r2_sieve(3, 1).values, (std::vector<std::uint32_t>{0}));
  EXPECT_TRUE(r2_sieve(10, 0).values.empty());
}

TEST(R2Sieve, MatchesPerPointEnumeration) {
  const R2Table t = r2_sieve(0, 100000);
  for (u64 m = 0; m < 100000; ++m) ASSERT_EQ(t[m], r2_enumerate(m)) << "m=" << m;
}

TEST(R2Sieve, WindowsAgreeWithFullTable) {
  const R2Table full = r2_sieve(0, 200000);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const u64 start = rng() % 190000, len = 1 + rng() % 10000;
    const R2Table w = r2_sieve(start, len);
    for (u64 m = start; m < start + len; ++m) ASSERT_EQ(w[m], full[m]);
  }
}

TEST(R2Sieve, FarWindowMatchesEnumeration) {
  const u64 start = 1000000000000ULL;
  const R2Table w = r2_sieve(start, 2000);
  for (u64 m = start; m < start + 2000; ++m) ASSERT_EQ(w[m], r2_enumerate(m));
}

TEST(R2Sieve, ArithmeticInvariants) {
  const R2Table t = r2_sieve(0, 50000);
  EXPECT_EQ(t[0], 1u);
  for (u64 m = 1; m < 50000; ++m) {
    ASSERT_EQ(t[m] % 4, 0u);
    // A prime p = 3 (mod 4) dividing m to an odd power forces r2(m) = 0.
    u64 n = m;
    bool obstructed = false;
    for (u64 p = 2; p * p <= n; ++p) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      if (p % 4 == 3 && e % 2 == 1) obstructed = true;
    }
    if (n > 1 && n % 4 == 3) obstructed = true;
    if (obstructed) {
      ASSERT_EQ(t[m], 0u) << m;
    }
  }
}

TEST(R2Sieve, SummatoryNearPiY) {
  const R2Table t = r2_sieve(0, 1000001);
  u64 sum = 0;
  double worst = 0.0;
  for (u64 y = 0; y <= 1000000; ++y) {
    sum += t[y];
    if (y >= 100) worst = std::max(worst, std::fabs(static_cast<double>(sum) - kPi * y) / std::sqrt(double(y)));
  }
  EXPECT_LE(worst, 10.0);
}

TEST(R2Sieve, BudgetExceeded) {
  EXPECT_THROW(r2_sieve(0, 1000, 999), BudgetError);
  EXPECT_NO_THROW(r2_sieve(0, 1000, 1000));
}

TEST(RhoSegment, Examples) {
  const R2Table r2 = r2_sieve(0, 10);
  // Frozen from brute force over (m, n): rho(0..2) = 1, 6, 8 and rho(4) = 6.
  EXPECT_EQ(rho_segment(0, 3, r2).density, (std::vector<u64>{1, 6, 8}));
  EXPECT_EQ(rho_segment(4, 5, r2).density, (std::vector<u64>{6}));
  EXPECT_EQ(rho_segment(0, 12, r2).density, (std::vector<u64>{1, 6, 8, 0, 6, 16, 0, 0, 8, 2, 8, 0}));
}

TEST(RhoSegment, ShortTableIsPreconditionError) {
  const R2Table r2 = r2_sieve(0, 3);  // covers m <= 2
  EXPECT_NO_THROW(rho_segment(0, 9, r2));
  EXPECT_THROW(rho_segment(0, 10, r2), PreconditionError);
}

TEST(RhoSegment, SplitsMatchDirectDoubleLoop) {
  constexpr u64 kHi = 20000;
  const R2Table r2 = r2_sieve(0, isqrt_floor(kHi) + 1);
  const std::vector<u64> direct = rho_direct(kHi, r2);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    u64 lo = 0;
    while (lo < kHi) {
      const u64 hi = std::min(kHi, lo + 1 + rng() % 3000);
      const RhoSegment seg = rho_segment(lo, hi, r2);
      for (u64 l = lo; l < hi; ++l) ASSERT_EQ(seg[l], direct[l]) << "l=" << l;
      lo = hi;
    }
  }
}

TEST(RhoSegment, PrefixSumsEqualWeightedStrictCount) {
  constexpr u64 kMax = 1000000;
  const R2Table r2 = r2_sieve(0, isqrt_floor(kMax) + 1);
  const RhoSegment seg = rho_segment(0, kMax, r2);
  std::vector<u64> prefix(kMax + 1, 0);
  for (u64 l = 0; l < kMax; ++l) prefix[l + 1] = prefix[l] + seg[l];
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const u64 x = 1 + rng() % kMax;
    u64 direct = 0;
    for (u64 m = 0; m * m < x; ++m) direct += r2[m] * (2 * *isqrt_strict(static_cast<i128>(x - m * m)) + 1);
    ASSERT_EQ(prefix[x], direct) << "x=" << x;
  }
}
