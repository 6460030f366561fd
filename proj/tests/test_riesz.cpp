#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hcount/arith.hpp"
#include "hcount/counting.hpp"
#include "hcount/numeric.hpp"
#include "hcount/riesz.hpp"

using namespace hcount;

namespace {

// (-1)^n / n! * f^(n)(t) for f(t) = t^(1/2), from the falling factorial of 1/2.
double taylor_coeff_oracle(unsigned n, double t) {
  double c = 1.0;
  for (unsigned j = 0; j < n; ++j) c *= (0.5 - j) / (j + 1.0);
  return (n % 2 ? -c : c) * std::pow(t, 0.5 - n);
}

}  // namespace

TEST(Riesz, Examples) {
  const R2Table r2 = r2_sieve(0, 10);
  const RieszSample a = riesz_error(2.0, 0.5, r2);
  EXPECT_NEAR(a.sum, 5.414213562373095, 1e-14);
  EXPECT_NEAR(a.main, 5.923843917544488, 1e-14);
  EXPECT_NEAR(a.e_rho, -0.509630355171393, 1e-14);

  const RieszSample z = riesz_error(0.0, 1.5, r2);
  EXPECT_EQ(z.sum, 0.0);
  EXPECT_EQ(z.main, 0.0);
  EXPECT_EQ(z.e_rho, 0.0);

  const RieszSample one = riesz_error(1.0, 0.5, r2);
  EXPECT_DOUBLE_EQ(one.sum, 1.0);
  EXPECT_NEAR(one.main, 2.0 * kPi / 3.0, 1e-15);
}

TEST(Riesz, GeneralRhoMatchesDirectSum) {
  const R2Table r2 = r2_sieve(0, 100);
  const double y = 57.3, rho = 0.8;
  double direct = 0.0;
  for (u64 m = 0; m <= 57; ++m) direct += r2[m] * std::pow(y - m, rho);
  const RieszSample s = riesz_error(y, rho, r2);
  EXPECT_NEAR(s.sum, direct, 1e-11 * direct);
  EXPECT_NEAR(s.main, kPi * std::pow(y, rho + 1.0) / (rho + 1.0), 1e-12 * s.main);
  EXPECT_THROW(riesz_error(y, 0.0, r2), PreconditionError);
  EXPECT_THROW(riesz_error(200.0, 0.5, r2), PreconditionError);
}

TEST(QValue, Examples) {
  const R2Table r2 = r2_sieve(0, 10);
  const QSample q = q_value(4.0, r2);
  EXPECT_NEAR(q.q_val, -0.509630355171393, 1e-14);
  EXPECT_THROW(q_value(0.0, r2), PreconditionError);
}

TEST(QValue, SignFollowsRieszError) {
  const R2Table r2 = r2_sieve(0, 1001);
  for (double x = 10.0; x < 1e6; x *= 1.37) {
    const QSample q = q_value(x, r2);
    EXPECT_EQ(std::signbit(q.q_val), std::signbit(q.e_half)) << x;
  }
}

TEST(Coefficients, Examples) {
  EXPECT_NEAR(c_coeff(0), 2.961921958772244, 1e-15);
  EXPECT_NEAR(c_coeff(0), 2.0 * std::sqrt(2.0) * kPi / 3.0, 1e-15);
  EXPECT_NEAR(c_coeff(1), -kPi / (5.0 * std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(c_coeff(1), -0.44429, 1e-5);
  EXPECT_NEAR(c_coeff(2), -0.039668597662128, 1e-15);
  EXPECT_NEAR(c_partial_sum(0), 2.96192, 1e-5);
  EXPECT_NEAR(c_partial_sum(1), 2.51763, 1e-5);
  EXPECT_NEAR(c_partial_sum(64), 2.46740110, 1e-8);
  EXPECT_LT(std::fabs(c_partial_sum(64) - kPi * kPi / 4.0), 1e-9);
}

TEST(Coefficients, TableInvariants) {
  const CoefficientTable t = coefficient_table(80);
  ASSERT_EQ(t.c.size(), 81u);
  EXPECT_GT(t.c[0], 0.0);
  for (unsigned n = 1; n <= 80; ++n) EXPECT_LT(t.c[n], 0.0) << n;
  for (unsigned n = 2; n < 80; ++n) EXPECT_LT(std::fabs(t.c[n + 1]), std::fabs(t.c[n]) / 2.0) << n;
  for (unsigned n = 1; n <= 80; ++n) {
    if (std::fabs(t.c[n]) > 1e-15 * t.partials[n - 1]) {
      EXPECT_LT(t.partials[n], t.partials[n - 1]) << n;
    } else {
      EXPECT_LE(t.partials[n], t.partials[n - 1]) << n;
    }
  }
}

TEST(DerivCoeff, Examples) {
  EXPECT_NEAR(deriv_coeff(0, 1.0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(deriv_coeff(1, 1.0), -1.0 / (2.0 * std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(deriv_coeff(1, 16.0), -0.5 / (2.0 * std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(deriv_coeff(1, 16.0), -0.17678, 1e-5);
}

TEST(DerivCoeff, MatchesTaylorCoefficientOracle) {
  for (double x : {1.0, 2.5, 16.0, 1e4, 3.3e7}) {
    for (unsigned n = 0; n <= 30; ++n) {
      const double oracle = taylor_coeff_oracle(n, 2.0 * std::sqrt(x));
      EXPECT_NEAR(deriv_coeff(n, x), oracle, 1e-12 * std::fabs(oracle)) << "n=" << n << " x=" << x;
    }
  }
}

TEST(DerivCoeff, CoefficientLinksToCn) {
  // d_n(x) * pi / (n + 3/2) * x^(n/2 + 3/4) = c_n x.
  for (unsigned n = 0; n <= 20; ++n) {
    const double x = 12345.0;
    const double lhs = deriv_coeff(n, x) * kPi / (n + 1.5) * std::pow(x, n / 2.0 + 0.75);
    EXPECT_NEAR(lhs, c_coeff(n) * x, 1e-11 * std::fabs(c_coeff(n) * x)) << n;
  }
}

TEST(RootExpansion, Examples) {
  for (unsigned n : {0u, 1u, 5u, 40u}) {
    const Lemma1Result r = lemma1_partial(49.0, 7, n);
    EXPECT_EQ(r.value, 0.0);
  }
  const Lemma1Result a = lemma1_partial(16.0, 2, 40);
  EXPECT_NEAR(a.value, std::sqrt(12.0), a.tail_bound + a.rounding_bound);
  EXPECT_NEAR(a.value, 3.46410, 1e-5);
  const Lemma1Result b = lemma1_partial(100.0, 0, 40);
  EXPECT_NEAR(b.value, 10.0, b.tail_bound + b.rounding_bound);
  EXPECT_THROW(lemma1_partial(10.0, 4, 5), PreconditionError);
}

TEST(RootExpansion, TermsMatchDerivCoeffForm) {
  const double x = 5000.0;
  const u64 m = 31;
  for (unsigned N : {0u, 1u, 3u, 12u}) {
    double direct = 0.0;
    for (unsigned n = 0; n <= N; ++n) direct += deriv_coeff(n, x) * std::pow(std::sqrt(x) - m, n + 0.5);
    EXPECT_NEAR(lemma1_partial(x, m, N).value, direct, 1e-12 * std::fabs(direct)) << N;
  }
}

TEST(RootExpansion, RandomPointsWithinTailBound) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> logx(std::log(10.0), std::log(1e8));
  for (int i = 0; i < 1000; ++i) {
    const double x = std::exp(logx(rng));
    const u64 m = rng() % (static_cast<u64>(std::sqrt(x)) + 1);
    const Lemma1Result r = lemma1_partial(x, m, 40);
    const double exact = std::sqrt(x - static_cast<double>(m) * m);
    ASSERT_LE(std::fabs(r.value - exact), r.tail_bound + r.rounding_bound + 4e-16 * exact) << x << " " << m;
    if (m <= 0.99 * std::sqrt(x)) {
      ASSERT_LT(r.tail_bound / exact, 1e-6);
    }
  }
}

TEST(SN, ZerothTermSplitsIntoMainAndQ) {
  const R2Table r2 = r2_sieve(0, 10001);
  for (double x : {1e3, 5.5e4, 1e6, 7.77e7}) {
    const double lhs = s_n(x, 0, r2) - c_coeff(0) * x;
    const double rhs = std::sqrt(x) * q_value(x, r2).q_val;
    EXPECT_NEAR(lhs, rhs, 1e-6 * std::fabs(s_n(x, 0, r2))) << x;
  }
}

TEST(SN, FirstTermNearC1X) {
  const R2Table r2 = r2_sieve(0, 100001);
  double worst = 0.0;
  for (double x = 1e4; x <= 1e10; x *= 3.1) {
    worst = std::max(worst, std::fabs(s_n(x, 1, r2) - c_coeff(1) * x) / std::pow(x, 0.25));
  }
  EXPECT_LT(worst, 20.0);
}

TEST(SN, SeriesSumsToSmoothedCount) {
  const R2Table r2 = r2_sieve(0, 3001);
  for (u64 x : {100u, 2024u, 99999u, 5000000u}) {
    CompensatedSum total;
    double bound = 0.0;
    for (unsigned n = 0; n <= 40; ++n) total.add(s_n(double(x), n, r2));
    for (u64 m = 0; m * m <= x; ++m) {
      const Lemma1Result l = lemma1_partial(double(x), m, 40);
      bound += r2[m] * (l.tail_bound + l.rounding_bound);
    }
    const double target = count_M(x, r2);
    EXPECT_NEAR(total.value(), target, bound + 1e-12 * target) << x;
  }
}

TEST(ExpansionRatio, BoundedAcrossScales) {
  const R2Table r2 = r2_sieve(0, 100001);
  for (int e = 4; e <= 10; ++e) {
    for (unsigned n = 1; n <= 8; ++n) {
      const double r = eq21_ratio(std::pow(10.0, e), n, r2);
      EXPECT_TRUE(std::isfinite(r));
      EXPECT_LE(r, 100.0) << "n=" << n << " e=" << e;
    }
  }
  EXPECT_THROW(eq21_ratio(100.0, 0, r2), PreconditionError);
}

TEST(ExpansionRatio, ContinuousAcrossPerfectFourthPower) {
  const R2Table r2 = r2_sieve(0, 200);
  const double x = 10000.0;  // 10^4 = 10^4, sqrt(x) = 100 is an integer
  for (unsigned n = 1; n <= 4; ++n) {
    EXPECT_NEAR(eq21_ratio(x, n, r2), eq21_ratio(x * (1 + 1e-9), n, r2), 1e-3) << n;
  }
}

TEST(HalfIntPower, BothPathsMatchPow) {
  for (double b : {0.001, 0.5, 1.0, 3.7, 250.0}) {
    for (unsigned n = 0; n <= 20; ++n) {
      const double expect = std::pow(b, n + 0.5);
      EXPECT_NEAR(half_int_power(b, n), expect, 1e-13 * expect) << b << " " << n;
    }
  }
  EXPECT_EQ(half_int_power(0.0, 3), 0.0);
}
