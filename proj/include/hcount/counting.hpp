#pragma once
// S(x) = #{(m, n) : m >= 0, n in Z, m^2 + n^2 < x} weighted by r2(m), which
// equals the number of integer points (a, b, w) with (a^2 + b^2)^2 + w^2 < x,
// together with its main term (pi^2 / 2) x, the error E(x), and the smoothed
// companion M(x) = sum_{0 <= m <= sqrt(x)} r2(m) (x - m^2)^(1/2).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "hcount/arith.hpp"
#include "hcount/errors.hpp"
#include "hcount/numeric.hpp"

namespace hcount {

namespace detail {

inline void require_r2(const R2Table& r2, u64 m_max, const char* op) {
  if (!r2.covers(0, m_max)) {
    throw PreconditionError(std::string(op) + ": r2 table must cover [0, " + std::to_string(m_max) + "]");
  }
}

// x = hi + lo with hi the nearest double and lo an exact small integer.
struct SplitX {
  double hi;
  double lo;
};

inline SplitX split(u64 x) {
  const double hi = static_cast<double>(x);
  const i64 lo = static_cast<i64>(x - static_cast<u64>(hi));
  return {hi, static_cast<double>(lo)};
}

}  // namespace detail

// (pi^2 / 2) x, accurate to a few ulps for x <= 10^18.
inline double main_term(u64 x) {
  const auto [xh, xl] = detail::split(x);
  const double p = xh * kHalfPiSqHi;
  const double err = std::fma(xh, kHalfPiSqHi, -p);
  return p + (err + xh * kHalfPiSqLo + xl * kHalfPiSqHi);
}

// s - (pi^2 / 2) x without cancelling the leading digits: the integer part
// of the main term is subtracted exactly.
inline double error_term(u64 s, u64 x) {
  const auto [xh, xl] = detail::split(x);
  const double p = xh * kHalfPiSqHi;
  const double err = std::fma(xh, kHalfPiSqHi, -p);
  const double pf = std::floor(p);
  const double int_diff = static_cast<double>(static_cast<i128>(s) - static_cast<i128>(static_cast<u64>(pf)));
  return int_diff - (p - pf) - (err + xh * kHalfPiSqLo + xl * kHalfPiSqHi);
}

inline u64 count_S(u64 x, const R2Table& r2) {
  const auto top = isqrt_strict(static_cast<i128>(x));
  if (!top) return 0;
  detail::require_r2(r2, *top, "count_S");
  u64 s = 0;
  for (u64 m = 0; m <= *top; ++m) {
    const u64 w = r2[m];
    if (w == 0) continue;
    s += w * (2 * *isqrt_strict(static_cast<i128>(x - m * m)) + 1);
  }
  return s;
}

inline double count_M(u64 x, const R2Table& r2) {
  const u64 top = isqrt_floor(x);
  detail::require_r2(r2, top, "count_M");
  CompensatedSum sum;
  for (u64 m = top + 1; m-- > 0;) {
    const u64 w = r2[m];
    if (w == 0) continue;
    sum.add(static_cast<double>(w) * std::sqrt(static_cast<double>(x - m * m)));
  }
  return sum.value();
}

// M for real x >= 0.
inline double count_M_real(double x, const R2Table& r2) {
  if (!(x >= 0.0)) throw PreconditionError("count_M_real: x must be nonnegative");
  const u64 top = static_cast<u64>(std::floor(std::sqrt(x)));
  detail::require_r2(r2, top, "count_M");
  CompensatedSum sum;
  for (u64 m = top + 1; m-- > 0;) {
    const u64 w = r2[m];
    if (w == 0) continue;
    const double md = static_cast<double>(m);
    sum.add(static_cast<double>(w) * std::sqrt(std::max(0.0, x - md * md)));
  }
  return sum.value();
}

// S and E at a jump abscissa x, from the left (l = x excluded) and from the
// right (l = x included).
struct CountSample {
  u64 x = 0;
  u64 s_left = 0;
  u64 s_right = 0;
  double main = 0.0;
  double e_left = 0.0;
  double e_right = 0.0;
  double e_norm_left = 0.0;
  double e_norm_right = 0.0;
};

inline CountSample error_sample(u64 x, u64 s_left, u64 rho_x) {
  CountSample c;
  c.x = x;
  c.s_left = s_left;
  c.s_right = s_left + rho_x;
  c.main = main_term(x);
  c.e_left = error_term(c.s_left, x);
  c.e_right = error_term(c.s_right, x);
  if (x > 0) {
    const double root = std::sqrt(static_cast<double>(x));
    c.e_norm_left = c.e_left / root;
    c.e_norm_right = c.e_right / root;
  }
  return c;
}

}  // namespace hcount
