#pragma once
// Riesz means of r2, the normalized oscillation Q, and the decomposition of
// M(x) into the sums
//
//   S(sqrt(x); n) = d_n(x) * sum_{0 <= m <= sqrt(x)} r2(m) (sqrt(x) - m)^(n + 1/2)
//
// where d_n(x) = (-1)^n / n! * f^(n)(2 sqrt(x)) for f(t) = t^(1/2). Each
// S(sqrt(x); n) is c_n x plus a small error, and sum_n c_n = pi^2 / 4.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "hcount/arith.hpp"
#include "hcount/counting.hpp"
#include "hcount/errors.hpp"
#include "hcount/numeric.hpp"

namespace hcount {

struct RieszSample {
  double y = 0.0;
  double rho = 0.0;
  double sum = 0.0;
  double main = 0.0;
  double e_rho = 0.0;
};

namespace detail {

// Returns n when rho = n + 1/2 for a nonnegative integer n, otherwise -1.
inline int half_integer_index(double rho) {
  const double t = rho - 0.5;
  if (t >= 0.0 && t < 64.0 && std::floor(t) == t) return static_cast<int>(t);
  return -1;
}

// sum_{0 <= m <= y} r2(m) (y - m)^rho, smallest terms first.
inline double riesz_sum(double y, double rho, const R2Table& r2) {
  if (y <= 0.0) return 0.0;
  const u64 top = static_cast<u64>(std::floor(y));
  require_r2(r2, top, "riesz_error");
  const int half = half_integer_index(rho);
  CompensatedSum sum;
  for (u64 m = top + 1; m-- > 0;) {
    const u64 w = r2[m];
    if (w == 0) continue;
    const double base = y - static_cast<double>(m);
    const double pw = half >= 0 ? half_int_power(base, static_cast<unsigned>(half)) : std::pow(base, rho);
    sum.add(static_cast<double>(w) * pw);
  }
  return sum.value();
}

// prod_{k=1}^{n-1} (1 - 1/(2k)), accumulated iteratively.
inline double half_product(unsigned n) {
  double p = 1.0;
  for (unsigned k = 1; k < n; ++k) p *= 1.0 - 1.0 / (2.0 * k);
  return p;
}

}  // namespace detail

inline RieszSample riesz_error(double y, double rho, const R2Table& r2) {
  if (!(rho > 0.0)) throw PreconditionError("riesz_error: rho must be positive");
  if (y < 0.0) throw PreconditionError("riesz_error: y must be nonnegative");
  RieszSample s;
  s.y = y;
  s.rho = rho;
  s.sum = detail::riesz_sum(y, rho, r2);
  // Gamma(rho + 1) / Gamma(rho + 2) = 1 / (rho + 1).
  s.main = y > 0.0 ? kPi * std::pow(y, rho + 1.0) / (rho + 1.0) : 0.0;
  s.e_rho = s.sum - s.main;
  return s;
}

struct QSample {
  double x = 0.0;
  double e_half = 0.0;  // E_{1/2}(sqrt(x))
  double q_val = 0.0;   // sqrt(2) x^(-1/4) E_{1/2}(sqrt(x))
};

inline QSample q_value(double x, const R2Table& r2) {
  if (!(x > 0.0)) throw PreconditionError("q_value: x must be positive");
  QSample q;
  q.x = x;
  q.e_half = riesz_error(std::sqrt(x), 0.5, r2).e_rho;
  q.q_val = kSqrt2 * q.e_half / std::sqrt(std::sqrt(x));
  return q;
}

// c_0 = 2^(3/2) pi / 3; c_n = -pi prod_{k<n}(1 - 1/(2k)) / (sqrt(2) 2^n n (n + 3/2)).
inline double c_coeff(unsigned n) {
  if (n == 0) return 2.0 * kSqrt2 * kPi / 3.0;
  const double nn = static_cast<double>(n);
  return -kPi * detail::half_product(n) / (kSqrt2 * std::ldexp(1.0, static_cast<int>(n)) * nn * (nn + 1.5));
}

struct CoefficientTable {
  unsigned n_max = 0;
  std::vector<double> c;
  std::vector<double> partials;
};

inline CoefficientTable coefficient_table(unsigned n_max) {
  CoefficientTable t;
  t.n_max = n_max;
  t.c.reserve(n_max + 1);
  t.partials.reserve(n_max + 1);
  CompensatedSum sum;
  for (unsigned n = 0; n <= n_max; ++n) {
    t.c.push_back(c_coeff(n));
    sum.add(t.c.back());
    t.partials.push_back(sum.value());
  }
  return t;
}

inline double c_partial_sum(unsigned n_max) { return coefficient_table(n_max).partials.back(); }

// (-1)^n / n! * f^(n)(2 sqrt(x)) for f(t) = t^(1/2).
inline double deriv_coeff(unsigned n, double x) {
  if (!(x > 0.0)) throw PreconditionError("deriv_coeff: x must be positive");
  if (n == 0) return kSqrt2 * std::sqrt(std::sqrt(x));
  const double nn = static_cast<double>(n);
  return -detail::half_product(n) / (kSqrt2 * std::ldexp(1.0, static_cast<int>(n)) * nn) *
         std::pow(x, 0.25 - 0.5 * nn);
}

struct Lemma1Result {
  double value = 0.0;
  double tail_bound = 0.0;      // truncation: 2 |next term|
  double rounding_bound = 0.0;  // floating-point summation error bound
};

// Partial sum sum_{n=0}^{N} d_n(x) (sqrt(x) - m)^(n + 1/2) of the expansion
// of (x - m^2)^(1/2). Terms are formed as
//   d_n(x) (sqrt(x) - m)^(n+1/2) = k_n x^(1/4) (sqrt(x) - m)^(1/2) r^n,
// with r = (sqrt(x) - m) / sqrt(x) <= 1, which never overflows; successive
// terms shrink by at least r / 2.
inline Lemma1Result lemma1_partial(double x, u64 m, unsigned n_terms) {
  if (!(x > 0.0)) throw PreconditionError("lemma1_partial: x must be positive");
  const double root = std::sqrt(x);
  const double md = static_cast<double>(m);
  if (md > root) throw PreconditionError("lemma1_partial: m must not exceed sqrt(x)");
  const double gap = std::fma(-md, md, x) / (root + md);
  const double r = gap / root;
  const double scale = std::sqrt(std::sqrt(x)) * std::sqrt(gap);
  // k_n = d_n(x) x^(n/2 - 1/4): k_0 = sqrt(2); k_n = -prod/(sqrt(2) 2^n n).
  auto term = [&](unsigned n, double& prod, double& rn) {
    if (n == 0) return kSqrt2 * scale;
    if (n >= 2) prod *= 1.0 - 1.0 / (2.0 * (n - 1));
    rn *= r;
    const double nn = static_cast<double>(n);
    return -prod / (kSqrt2 * std::ldexp(1.0, static_cast<int>(n)) * nn) * scale * rn;
  };
  double prod = 1.0, rn = 1.0, abs_sum = 0.0;
  // Summed from the smallest term upward.
  std::vector<double> terms(n_terms + 1);
  for (unsigned n = 0; n <= n_terms; ++n) terms[n] = term(n, prod, rn);
  const double next = term(n_terms + 1, prod, rn);
  CompensatedSum sum;
  for (unsigned n = n_terms + 1; n-- > 0;) {
    sum.add(terms[n]);
    abs_sum += std::fabs(terms[n]);
  }
  Lemma1Result res;
  res.value = sum.value();
  res.tail_bound = 2.0 * std::fabs(next);
  // Each term carries O(n) roundings from its construction.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  res.rounding_bound = 4.0 * (n_terms + 8) * eps * abs_sum;
  return res;
}

// S(sqrt(x); n).
inline double s_n(double x, unsigned n, const R2Table& r2) {
  if (!(x > 0.0)) throw PreconditionError("s_n: x must be positive");
  return deriv_coeff(n, x) * detail::riesz_sum(std::sqrt(x), n + 0.5, r2);
}

// |S(sqrt(x); n) - c_n x| / (2^(-n) x^(1/4)): the observed constant in the
// bound S(sqrt(x); n) = c_n x + O(2^(-n) x^(1/4)).
inline double eq21_ratio(double x, unsigned n, const R2Table& r2) {
  if (n < 1) throw PreconditionError("eq21_ratio: n must be at least 1");
  const double err = s_n(x, n, r2) - c_coeff(n) * x;
  return std::fabs(err) / (std::ldexp(1.0, -static_cast<int>(n)) * std::sqrt(std::sqrt(x)));
}

}  // namespace hcount
