#pragma once
// Heisenberg group H_q in its complex realization C^q x R, the homogeneous
// norms N_{alpha,A}(z, w) = (|z|^alpha + A |w|^(alpha/2))^(1/alpha), and two
// oracles used to validate the sieve pipeline: brute-force lattice counting
// in a norm ball and a Monte-Carlo estimate of the unit-ball volume.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hcount/arith.hpp"
#include "hcount/errors.hpp"
#include "hcount/parallel.hpp"

namespace hcount {

struct GaugeParams {
  double alpha = 4.0;
  double A = 1.0;
  int q = 1;

  void validate() const {
    if (!(alpha > 0.0)) throw PreconditionError("gauge: alpha must be positive");
    if (!(A > 0.0)) throw PreconditionError("gauge: A must be positive");
    if (q < 1) throw PreconditionError("gauge: q must be at least 1");
  }
  bool is_koranyi() const { return alpha == 4.0 && A == 1.0; }
};

// z holds 2q reals laid out as (Re z_1, Im z_1, ..., Re z_q, Im z_q).
struct HPoint {
  std::vector<double> z;
  double w = 0.0;

  int q() const { return static_cast<int>(z.size() / 2); }
  static HPoint identity(int q) { return HPoint{std::vector<double>(2 * static_cast<std::size_t>(q), 0.0), 0.0}; }
  bool operator==(const HPoint&) const = default;
};

namespace detail {

inline void check_dims(const HPoint& u, int q, const char* op) {
  if (u.z.size() != 2 * static_cast<std::size_t>(q)) {
    throw PreconditionError(std::string(op) + ": point has " + std::to_string(u.z.size()) +
                            " z-components, expected " + std::to_string(2 * q));
  }
}

inline double z_norm_sq(const HPoint& u) {
  double s = 0.0;
  for (double c : u.z) s += c * c;
  return s;
}

}  // namespace detail

inline double gauge_norm(const GaugeParams& p, const HPoint& u) {
  p.validate();
  detail::check_dims(u, p.q, "gauge_norm");
  const double r2 = detail::z_norm_sq(u);
  if (p.alpha == 4.0) {
    return std::sqrt(std::sqrt(r2 * r2 + p.A * u.w * u.w));
  }
  const double s = std::pow(r2, p.alpha / 2.0) + p.A * std::pow(std::fabs(u.w), p.alpha / 2.0);
  return std::pow(s, 1.0 / p.alpha);
}

// (z, w)(z', w') = (z + z', w + w' + 2 Im(z . conj(z'))).
inline HPoint group_mul(int q, const HPoint& u, const HPoint& v) {
  detail::check_dims(u, q, "group_mul");
  detail::check_dims(v, q, "group_mul");
  HPoint out;
  out.z.resize(u.z.size());
  double symplectic = 0.0;
  for (int j = 0; j < q; ++j) {
    const double x = u.z[2 * j], y = u.z[2 * j + 1];
    const double xp = v.z[2 * j], yp = v.z[2 * j + 1];
    out.z[2 * j] = x + xp;
    out.z[2 * j + 1] = y + yp;
    // Im((x + iy)(x' - iy')) = y x' - x y'
    symplectic += y * xp - x * yp;
  }
  out.w = u.w + v.w + 2.0 * symplectic;
  return out;
}

inline HPoint inverse(const HPoint& u) {
  HPoint out{u.z, -u.w};
  for (double& c : out.z) c = -c;
  return out;
}

// Heisenberg dilation (z, w) -> (a z, a^2 w).
inline HPoint dilate(double a, const HPoint& u) {
  if (!(a > 0.0)) throw PreconditionError("dilate: scale must be positive");
  HPoint out{u.z, a * a * u.w};
  for (double& c : out.z) c *= a;
  return out;
}

// Left-invariant distance N_{4,1}(v^{-1} u).
inline double koranyi_distance(const HPoint& u, const HPoint& v) {
  const int q = u.q();
  return gauge_norm(GaugeParams{4.0, 1.0, q}, group_mul(q, inverse(v), u));
}

// Default cap on the number of lattice points a brute-force count may visit.
inline constexpr double kDefaultBruteBudget = 2.0e11;

namespace detail {

// Visits every z in [-bound, bound]^(dims) with fixed first coordinate,
// calling f(sum of squares of z).
template <class F>
void for_each_z_sq(int dims, i64 first, i64 bound, F&& f) {
  std::vector<i64> coords(static_cast<std::size_t>(dims), -bound);
  coords[0] = first;
  for (;;) {
    i64 s = 0;
    for (i64 c : coords) s += c * c;
    f(s);
    int k = 1;
    while (k < dims && coords[static_cast<std::size_t>(k)] == bound) {
      coords[static_cast<std::size_t>(k)] = -bound;
      ++k;
    }
    if (k >= dims) return;
    ++coords[static_cast<std::size_t>(k)];
  }
}

inline void check_box(double points, double budget) {
  if (points > budget) {
    throw BudgetError("brute_count: bounding box of " + std::to_string(points) + " points exceeds budget");
  }
}

}  // namespace detail

// |Z^(2q+1) ∩ {u : N_{alpha,A}(u) < t}| by enumeration of the bounding box.
// Floating-point classification: points within ~1e-12 t of the sphere may
// land on either side.
inline u64 brute_count(const GaugeParams& p, double t, unsigned threads = 1,
                       double budget = kDefaultBruteBudget) {
  p.validate();
  if (!(t > 0.0)) return 0;
  const int dims = 2 * p.q;
  const i64 zb = static_cast<i64>(std::floor(t));
  const i64 wb = static_cast<i64>(std::floor(t * t * std::pow(p.A, -2.0 / p.alpha)));
  detail::check_box(std::pow(2.0 * zb + 1.0, dims) * (2.0 * wb + 1.0), budget);
  std::vector<u64> partial(static_cast<std::size_t>(2 * zb + 1), 0);
  parallel_for(partial.size(), resolve_threads(threads), [&](std::size_t i) {
    HPoint u = HPoint::identity(p.q);
    u64 c = 0;
    const i64 first = static_cast<i64>(i) - zb;
    std::vector<i64> coords(static_cast<std::size_t>(dims), -zb);
    coords[0] = first;
    for (;;) {
      for (int j = 0; j < dims; ++j) u.z[static_cast<std::size_t>(j)] = static_cast<double>(coords[static_cast<std::size_t>(j)]);
      for (i64 w = -wb; w <= wb; ++w) {
        u.w = static_cast<double>(w);
        if (gauge_norm(p, u) < t) ++c;
      }
      int k = 1;
      while (k < dims && coords[static_cast<std::size_t>(k)] == zb) {
        coords[static_cast<std::size_t>(k)] = -zb;
        ++k;
      }
      if (k >= dims) break;
      ++coords[static_cast<std::size_t>(k)];
    }
    partial[i] = c;
  });
  u64 total = 0;
  for (u64 c : partial) total += c;
  return total;
}

// Count with radius given through t^4. For the Koranyi gauge (alpha = 4,
// A = 1) the test (|z|^2)^2 + w^2 < t4 is evaluated in exact integers;
// other parameters fall back to the floating-point path with t = t4^(1/4).
inline u64 brute_count_t4(const GaugeParams& p, u64 t4, unsigned threads = 1,
                          double budget = kDefaultBruteBudget) {
  p.validate();
  if (!p.is_koranyi()) return brute_count(p, std::pow(static_cast<double>(t4), 0.25), threads, budget);
  if (t4 == 0) return 0;
  if (t4 > (u64{1} << 62)) throw BudgetError("brute_count: t4 too large for enumeration");
  // Largest |a| with a^4 < t4 and largest |w| with w^2 < t4.
  const i64 zb = static_cast<i64>(isqrt_floor(*isqrt_strict(static_cast<i128>(t4))));
  const i64 wb = static_cast<i64>(*isqrt_strict(static_cast<i128>(t4)));
  const int dims = 2 * p.q;
  detail::check_box(std::pow(2.0 * zb + 1.0, dims) * (2.0 * wb + 1.0), budget);
  const i64 bound = static_cast<i64>(t4);
  std::vector<u64> partial(static_cast<std::size_t>(2 * zb + 1), 0);
  parallel_for(partial.size(), resolve_threads(threads), [&](std::size_t i) {
    u64 c = 0;
    detail::for_each_z_sq(dims, static_cast<i64>(i) - zb, zb, [&](i64 s) {
      if (s > wb) return;
      const i64 z4 = s * s;
      if (z4 >= bound) return;
      for (i64 w = -wb; w <= wb; ++w) {
        if (z4 + w * w < bound) ++c;
      }
    });
    partial[i] = c;
  });
  u64 total = 0;
  for (u64 c : partial) total += c;
  return total;
}

// Counter-based uniform stream: the value for (seed, index) is a SplitMix64
// finalization of the pair, so any partition of the sample range reproduces
// the same draws.
inline u64 splitmix64(u64 x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline double counter_uniform(u64 seed, u64 index) {
  const u64 h = splitmix64(splitmix64(seed) ^ index);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

struct VolumeEstimate {
  double volume = 0.0;
  double std_error = 0.0;
  u64 hits = 0;
  u64 samples = 0;
  double box_volume = 0.0;
};

// Monte-Carlo estimate of the volume of {N_{alpha,A} < 1} by uniform sampling
// in [-1, 1]^(2q) x [-A^(-2/alpha), A^(-2/alpha)]. Deterministic in `seed`
// and independent of the thread count.
inline VolumeEstimate mc_volume(const GaugeParams& p, u64 samples, u64 seed, unsigned threads = 1) {
  p.validate();
  if (samples == 0) throw PreconditionError("mc_volume: samples must be at least 1");
  const int dims = 2 * p.q;
  const double w_half = std::pow(p.A, -2.0 / p.alpha);
  const u64 stride = static_cast<u64>(dims) + 1;
  constexpr u64 kBlock = u64{1} << 16;
  const u64 blocks = (samples + kBlock - 1) / kBlock;
  std::vector<u64> hits(blocks, 0);
  parallel_for(blocks, resolve_threads(threads), [&](std::size_t b) {
    HPoint u = HPoint::identity(p.q);
    const u64 first = b * kBlock;
    const u64 last = std::min(samples, first + kBlock);
    u64 h = 0;
    for (u64 i = first; i < last; ++i) {
      const u64 base = i * stride;
      for (int j = 0; j < dims; ++j) {
        u.z[static_cast<std::size_t>(j)] = 2.0 * counter_uniform(seed, base + static_cast<u64>(j)) - 1.0;
      }
      u.w = w_half * (2.0 * counter_uniform(seed, base + static_cast<u64>(dims)) - 1.0);
      if (gauge_norm(p, u) < 1.0) ++h;
    }
    hits[b] = h;
  });
  VolumeEstimate est;
  est.samples = samples;
  for (u64 h : hits) est.hits += h;
  est.box_volume = std::pow(2.0, dims) * 2.0 * w_half;
  const double frac = static_cast<double>(est.hits) / static_cast<double>(samples);
  est.volume = est.box_volume * frac;
  est.std_error = est.box_volume * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
  return est;
}

}  // namespace hcount
