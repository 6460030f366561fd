#pragma once
// Exact integer kernels: integer square roots, a windowed r2 sieve, and the
// jump density rho(l) = sum over m >= 0, n in Z with m^2 + n^2 = l of r2(m).
//
// Both sieves enumerate lattice pairs landing in a window rather than
// factoring, so a window costs O(len + sqrt(end) * sqrt(len)) and windows are
// independent of each other.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcount/errors.hpp"

namespace hcount {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Default cap on the number of entries a single sieve window may allocate.
inline constexpr u64 kDefaultSegmentBudget = u64{1} << 28;

// Largest k with k*k <= v. Exact for every v < 2^126.
inline u64 isqrt_floor(u128 v) {
  if (v == 0) return 0;
  u64 k = static_cast<u64>(std::sqrt(static_cast<long double>(v)));
  // The long double estimate is within a few units; walk to the exact root.
  while (static_cast<u128>(k) * k > v) --k;
  while (static_cast<u128>(k + 1) * (k + 1) <= v) ++k;
  return k;
}

// Largest k >= 0 with k*k < v; empty when v <= 0 (no integer qualifies).
inline std::optional<u64> isqrt_strict(i128 v) {
  if (v <= 0) return std::nullopt;
  return isqrt_floor(static_cast<u128>(v - 1));
}

// Smallest k >= 0 with k*k >= v.
inline u64 isqrt_ceil(u128 v) {
  const u64 k = isqrt_floor(v);
  return static_cast<u128>(k) * k == v ? k : k + 1;
}

// r2(m) for m in [start, start + values.size()).
struct R2Table {
  u64 start = 0;
  std::vector<std::uint32_t> values;

  u64 end() const { return start + values.size(); }
  bool covers(u64 lo, u64 hi_inclusive) const { return lo >= start && hi_inclusive < end(); }
  std::uint32_t operator[](u64 m) const { return values[m - start]; }
};

// Exact r2 over [start, start + len), counting every signed ordered (a, b).
inline R2Table r2_sieve(u64 start, u64 len, u64 budget = kDefaultSegmentBudget) {
  if (len > budget) {
    throw BudgetError("r2_sieve: window of " + std::to_string(len) + " entries exceeds budget of " +
                      std::to_string(budget));
  }
  if (start > (u64{1} << 63) || len > (u64{1} << 63) - start) {
    throw PreconditionError("r2_sieve: start + len must not exceed 2^63");
  }
  R2Table table{start, std::vector<std::uint32_t>(len, 0)};
  if (len == 0) return table;
  const u64 end = start + len;
  auto* out = table.values.data();
  const u64 a_max = isqrt_floor(end - 1);
  for (u64 a = 0; a <= a_max; ++a) {
    const u64 a2 = a * a;
    const u64 b_lo = a2 >= start ? 0 : isqrt_ceil(start - a2);
    const u64 b_hi = isqrt_floor(end - 1 - a2);
    const std::uint32_t wa = a == 0 ? 1 : 2;
    u64 m = a2 + b_lo * b_lo;
    for (u64 b = b_lo; b <= b_hi; ++b) {
      out[m - start] += wa * (b == 0 ? 1u : 2u);
      m += 2 * b + 1;
    }
  }
  return table;
}

// rho(l) for l in [lo, hi).
struct RhoSegment {
  u64 lo = 0;
  u64 hi = 0;
  std::vector<u64> density;

  u64 operator[](u64 l) const { return density[l - lo]; }
  // Number of lattice points with lo <= m^2 + n^2 < hi, weighted by r2(m).
  u64 total() const {
    u64 s = 0;
    for (u64 d : density) s += d;
    return s;
  }
};

// Fills `density` (length hi - lo) with rho over [lo, hi). Requires r2 to
// cover [0, floor(sqrt(hi - 1))].
inline void rho_fill(u64 lo, u64 hi, const R2Table& r2, std::span<u64> density) {
  if (hi < lo) throw PreconditionError("rho_segment: hi < lo");
  if (density.size() != hi - lo) throw PreconditionError("rho_segment: output span has wrong length");
  std::fill(density.begin(), density.end(), u64{0});
  if (hi == lo) return;
  const u64 m_max = isqrt_floor(hi - 1);
  if (!r2.covers(0, m_max)) {
    throw PreconditionError("rho_segment: r2 table must cover [0, " + std::to_string(m_max) + "]");
  }
  u64* out = density.data();
  for (u64 m = 0; m <= m_max; ++m) {
    const u64 w = r2[m];
    if (w == 0) continue;
    const u64 m2 = m * m;
    const u64 n_lo = m2 >= lo ? 0 : isqrt_ceil(lo - m2);
    const u64 n_hi = isqrt_floor(hi - 1 - m2);
    if (n_lo > n_hi) continue;
    u64 l = m2 + n_lo * n_lo;
    u64 n = n_lo;
    if (n == 0) {
      out[l - lo] += w;
      l += 1;
      n = 1;
    }
    const u64 w2 = 2 * w;
    for (; n <= n_hi; ++n) {
      out[l - lo] += w2;
      l += 2 * n + 1;
    }
  }
}

inline RhoSegment rho_segment(u64 lo, u64 hi, const R2Table& r2, u64 budget = kDefaultSegmentBudget) {
  if (hi < lo) throw PreconditionError("rho_segment: hi < lo");
  if (hi - lo > budget) throw BudgetError("rho_segment: window exceeds budget");
  RhoSegment seg{lo, hi, std::vector<u64>(hi - lo)};
  rho_fill(lo, hi, r2, seg.density);
  return seg;
}

}  // namespace hcount
