#pragma once
// Acceptance checks, grouped into suites (arith, gauge, identities, scan).
// Each check runs at its full size, pins its threshold, and reports the
// observed value next to the threshold.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hcount/arith.hpp"
#include "hcount/counting.hpp"
#include "hcount/gauge.hpp"
#include "hcount/io.hpp"
#include "hcount/numeric.hpp"
#include "hcount/parallel.hpp"
#include "hcount/riesz.hpp"
#include "hcount/scanner.hpp"

namespace hcount::verify {

struct CriterionResult {
  int id = 0;
  std::string suite;
  std::string name;
  bool passed = false;
  std::string observed;
  std::string threshold;
  std::string detail;
  double seconds = 0.0;
};

struct Criterion {
  int id;
  std::string suite;
  std::string name;
  std::function<CriterionResult()> run;
};

struct Options {
  unsigned threads = 0;
  u64 seed = 20240611;
};

namespace detail {

inline std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

inline CriterionResult make(bool ok, std::string observed, std::string threshold, std::string detail = {}) {
  CriterionResult r;
  r.passed = ok;
  r.observed = std::move(observed);
  r.threshold = std::move(threshold);
  r.detail = std::move(detail);
  return r;
}

// Jump points x in [lo, hi) with S(x) from the left and E(x)/sqrt(x) from the left.
struct JumpColumn {
  std::vector<u64> x;
  std::vector<u64> s_left;
  std::vector<double> e_norm_left;
};

inline JumpColumn collect_jumps(u64 lo, u64 hi, unsigned threads) {
  JumpColumn col;
  ScanConfig cfg;
  cfg.x_max = hi;
  cfg.threads = threads;
  scan(cfg, [&](const CountSample& c) {
    if (c.x < lo) return;
    col.x.push_back(c.x);
    col.s_left.push_back(c.s_left);
    col.e_norm_left.push_back(c.e_norm_left);
  });
  return col;
}

// Max of f(i) over i in [0, n), computed in fixed chunks and reduced in order.
template <class F>
std::pair<double, std::size_t> parallel_argmax(std::size_t n, unsigned threads, F&& f) {
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::pair<double, std::size_t>> best(chunks, {-std::numeric_limits<double>::infinity(), 0});
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const double v = f(i);
      if (v > best[c].first) best[c] = {v, i};
    }
  });
  std::pair<double, std::size_t> out{-std::numeric_limits<double>::infinity(), 0};
  for (const auto& b : best) {
    if (b.first > out.first) out = b;
  }
  return out;
}

}  // namespace detail

// 1. count_S agrees with brute-force Z^3 enumeration for every x in [1, 2*10^4].
inline CriterionResult oracle_equivalence(const Options&) {
  constexpr u64 kMax = 20000;
  const R2Table r2 = r2_sieve(0, isqrt_floor(kMax) + 1);
  u64 mismatches = 0, first_bad = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (u64 x = 1; x <= kMax; ++x) {
    if (count_S(x, r2) != brute_count_t4(GaugeParams{}, x, 1)) {
      if (mismatches++ == 0) first_bad = x;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = mismatches == 0 && secs < 30.0;
  return detail::make(ok, std::to_string(mismatches) + " mismatches, " + detail::fmt(secs, 3) + " s",
                      "0 mismatches, < 30 s single-threaded",
                      mismatches ? "first mismatch at x=" + std::to_string(first_bad) : "");
}

// 2. Prefix sums of rho reproduce count_S at 100 random x <= 10^6.
inline CriterionResult rho_consistency(const Options& opt) {
  constexpr u64 kMax = 1000000;
  const R2Table r2 = r2_sieve(0, isqrt_floor(kMax) + 1);
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<u64> pick(1, kMax);
  std::vector<u64> xs(100);
  for (auto& x : xs) x = pick(rng);
  // rho over [0, kMax) built from randomly sized windows.
  std::vector<u64> prefix(kMax + 1, 0);
  u64 lo = 0;
  std::uniform_int_distribution<u64> width(1, 50000);
  while (lo < kMax) {
    const u64 hi = std::min(kMax, lo + width(rng));
    const RhoSegment seg = rho_segment(lo, hi, r2);
    for (u64 l = lo; l < hi; ++l) prefix[l + 1] = prefix[l] + seg[l];
    lo = hi;
  }
  u64 bad = 0;
  for (u64 x : xs) bad += prefix[x] != count_S(x, r2);
  return detail::make(bad == 0, std::to_string(bad) + " of 100 differ", "0 (exact)");
}

// 3. sum_{n<=64} c_n = pi^2 / 4.
inline CriterionResult coefficient_identity(const Options&) {
  const double err = std::fabs(c_partial_sum(64) - kPi * kPi / 4.0);
  return detail::make(err < 1e-9, "|partial - pi^2/4| = " + detail::fmt(err, 3), "< 1e-9");
}

// 4. The 40-term expansion of (x - m^2)^(1/2) stays within its tail bound.
inline CriterionResult lemma1_expansion(const Options& opt) {
  std::mt19937_64 rng(opt.seed + 4);
  std::uniform_real_distribution<double> logx(std::log(10.0), std::log(1e8));
  double worst_excess = -std::numeric_limits<double>::infinity(), worst_rel = 0.0;
  int failures = 0, beyond_tail = 0;
  for (int i = 0; i < 100; ++i) {
    const double x = std::exp(logx(rng));
    const u64 top = static_cast<u64>(std::floor(std::sqrt(x)));
    const u64 m = std::uniform_int_distribution<u64>(0, top)(rng);
    const Lemma1Result r = lemma1_partial(x, m, 40);
    const long double md = static_cast<long double>(m);
    const double exact = static_cast<double>(std::sqrt(static_cast<long double>(x) - md * md));
    const double diff = std::fabs(r.value - exact);
    worst_excess = std::max(worst_excess, diff - (r.tail_bound + r.rounding_bound));
    if (diff > r.tail_bound + r.rounding_bound) ++failures;
    if (diff > r.tail_bound) ++beyond_tail;
    if (static_cast<double>(m) <= 0.99 * std::sqrt(x)) {
      const double rel = diff / exact;
      worst_rel = std::max(worst_rel, rel);
      if (!(rel < 1e-6)) ++failures;
    }
  }
  return detail::make(failures == 0,
                      "max relative error " + detail::fmt(worst_rel, 3) + ", max(|err| - bound) " +
                          detail::fmt(worst_excess, 3) + ", " + std::to_string(beyond_tail) +
                          "/100 above the tail bound alone",
                      "|err| <= tail bound + rounding bound; relative < 1e-6 for m <= 0.99 sqrt(x)",
                      std::to_string(failures) + " failures");
}

// 5. |S(sqrt(x); n) - c_n x| / (2^-n x^(1/4)) <= 100 for n in [1, 8], x in {10^4, ..., 10^10}.
inline CriterionResult expansion_constant(const Options&) {
  const R2Table r2 = r2_sieve(0, 100001);
  double worst = 0.0;
  std::string where;
  std::ostringstream table;
  for (int e = 4; e <= 10; ++e) {
    const double x = std::pow(10.0, e);
    table << "x=1e" << e << ":";
    for (unsigned n = 1; n <= 8; ++n) {
      const double r = eq21_ratio(x, n, r2);
      table << ' ' << detail::fmt(r, 3);
      if (r > worst) {
        worst = r;
        where = "n=" + std::to_string(n) + ", x=1e" + std::to_string(e);
      }
    }
    table << "; ";
  }
  return detail::make(worst <= 100.0, "max ratio " + detail::fmt(worst, 4) + " at " + where, "<= 100",
                      table.str());
}

// 6 and 7 share the jump points up to 10^7.
inline CriterionResult smoothed_gap(const Options& opt) {
  constexpr u64 kMax = 10000000;
  const unsigned threads = resolve_threads(opt.threads);
  const detail::JumpColumn col = detail::collect_jumps(1, kMax + 1, threads);
  const R2Table r2 = r2_sieve(0, isqrt_floor(kMax) + 1);
  const auto [worst, at] = detail::parallel_argmax(col.x.size(), threads, [&](std::size_t i) {
    const u64 x = col.x[i];
    return std::fabs(static_cast<double>(col.s_left[i]) - 2.0 * count_M(x, r2)) / std::sqrt(static_cast<double>(x));
  });
  return detail::make(worst <= 4.0,
                      "max |S - 2M|/sqrt(x) = " + detail::fmt(worst, 5) + " at x=" + std::to_string(col.x[at]),
                      "<= 4", std::to_string(col.x.size()) + " jump points");
}

inline CriterionResult q_identity(const Options& opt) {
  constexpr u64 kLo = 1000, kMax = 10000000;
  const unsigned threads = resolve_threads(opt.threads);
  const detail::JumpColumn col = detail::collect_jumps(kLo, kMax + 1, threads);
  const R2Table r2 = r2_sieve(0, isqrt_floor(kMax) + 1);
  const auto [worst, at] = detail::parallel_argmax(col.x.size(), threads, [&](std::size_t i) {
    return std::fabs(col.e_norm_left[i] - 2.0 * q_value(static_cast<double>(col.x[i]), r2).q_val);
  });
  return detail::make(worst <= 8.0,
                      "max |E/sqrt(x) - 2Q| = " + detail::fmt(worst, 5) + " at x=" + std::to_string(col.x[at]),
                      "<= 8", std::to_string(col.x.size()) + " jump points");
}

// 8. |E(x)| / (sqrt(x) ln x) over jump points in [10^2, 10^8].
inline CriterionResult corollary_bound(const Options& opt) {
  ScanConfig cfg;
  cfg.x_max = 100000001;
  cfg.threads = opt.threads;
  const RecordTable rt = scan_range(100, cfg.x_max, cfg);
  return detail::make(rt.corollary_constant <= 2.0,
                      detail::fmt(rt.corollary_constant, 5) + " at x=" + std::to_string(rt.corollary_x), "<= 2");
}

// 9. |E_{3/2}(sqrt(x))| / sqrt(x) on a log-spaced grid over [10^4, 10^8].
inline CriterionResult riesz32_bound(const Options& opt) {
  constexpr std::size_t kPoints = 20001;
  const R2Table r2 = r2_sieve(0, 10001);
  const auto [worst, at] = detail::parallel_argmax(kPoints, resolve_threads(opt.threads), [&](std::size_t i) {
    const double x = std::pow(10.0, 4.0 + 4.0 * static_cast<double>(i) / (kPoints - 1));
    return std::fabs(riesz_error(std::sqrt(x), 1.5, r2).e_rho) / std::sqrt(x);
  });
  const double x_at = std::pow(10.0, 4.0 + 4.0 * static_cast<double>(at) / (kPoints - 1));
  return detail::make(worst <= 10.0, detail::fmt(worst, 5) + " at x=" + detail::fmt(x_at, 8), "<= 10",
                      std::to_string(kPoints) + " log-spaced points");
}

// 10. Signed excursions per decade from 10^4 to 10^9.
inline CriterionResult omega_evidence(const Options& opt) {
  ScanConfig cfg;
  cfg.x_max = 1000000000;
  cfg.threads = opt.threads;
  const auto t0 = std::chrono::steady_clock::now();
  const RecordTable rt = scan(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool both_signs = true, max_monotone = true, min_monotone = true;
  std::ostringstream rows;
  double prev_max = -std::numeric_limits<double>::infinity(), prev_min = 0.0;
  for (int d = 4; d <= 8; ++d) {
    const DecadeStats& ds = rt.decades[d];
    rows << "[1e" << d << ",1e" << d + 1 << "): max " << detail::fmt(ds.max_e_norm, 5) << " @" << ds.argmax
         << ", min " << detail::fmt(ds.min_e_norm, 5) << " @" << ds.argmin << "; ";
    both_signs = both_signs && ds.present && ds.max_e_norm > 0.0 && ds.min_e_norm < 0.0;
    if (ds.max_e_norm < prev_max) max_monotone = false;
    if (-ds.min_e_norm < prev_min) min_monotone = false;
    prev_max = ds.max_e_norm;
    prev_min = -ds.min_e_norm;
  }
  const bool fast = secs < 300.0;
  std::string observed = std::string("(a) both signs ") + (both_signs ? "yes" : "NO") +
                         "; (b) max non-decreasing " + (max_monotone ? "yes" : "NO") +
                         ", |min| non-decreasing " + (min_monotone ? "yes" : "NO") + "; scan " +
                         detail::fmt(secs, 4) + " s on " + std::to_string(resolve_threads(opt.threads)) + " threads";
  return detail::make(both_signs && max_monotone && min_monotone && fast, observed,
                      "(a) and (b) hold in every decade, scan < 300 s", rows.str());
}

// 11. Gauge metric properties on seeded random samples.
inline CriterionResult gauge_properties(const Options& opt) {
  std::mt19937_64 rng(opt.seed + 11);
  std::uniform_real_distribution<double> coord(-3.0, 3.0), angle(0.0, 2.0 * kPi), scale(0.05, 20.0);
  auto random_point = [&](int q) {
    HPoint u = HPoint::identity(q);
    for (double& c : u.z) c = coord(rng);
    u.w = 3.0 * coord(rng);
    return u;
  };
  double tri = -std::numeric_limits<double>::infinity(), homog = 0.0, radial = 0.0, left = 0.0;
  for (int q = 1; q <= 2; ++q) {
    const GaugeParams p{4.0, 1.0, q};
    for (int i = 0; i < 100000; ++i) {
      const HPoint u = random_point(q), v = random_point(q);
      tri = std::max(tri, gauge_norm(p, group_mul(q, u, v)) - gauge_norm(p, u) - gauge_norm(p, v));
    }
    for (int i = 0; i < 10000; ++i) {
      const HPoint u = random_point(q);
      const double a = scale(rng);
      const double n = gauge_norm(p, u);
      homog = std::max(homog, std::fabs(gauge_norm(p, dilate(a, u)) - a * n) / (a * n));
      HPoint rot = u;
      for (int j = 0; j < q; ++j) {
        const double th = angle(rng);
        const double x = u.z[2 * j], y = u.z[2 * j + 1];
        rot.z[2 * j] = std::cos(th) * x - std::sin(th) * y;
        rot.z[2 * j + 1] = std::sin(th) * x + std::cos(th) * y;
      }
      radial = std::max(radial, std::fabs(gauge_norm(p, rot) - n) / n);
      const HPoint g = random_point(q), v = random_point(q);
      left = std::max(left, std::fabs(koranyi_distance(group_mul(q, g, u), group_mul(q, g, v)) -
                                      koranyi_distance(u, v)));
    }
  }
  const bool ok = tri <= 1e-9 && homog <= 1e-12 && radial <= 1e-12 && left <= 1e-9;
  return detail::make(ok,
                      "triangle excess " + detail::fmt(tri, 3) + ", homogeneity " + detail::fmt(homog, 3) +
                          ", radiality " + detail::fmt(radial, 3) + ", left-invariance " + detail::fmt(left, 3),
                      "triangle <= 1e-9, homogeneity/radiality <= 1e-12 rel, left-invariance <= 1e-9");
}

// 12. Unit-ball volume pi^2 / 2 by Monte-Carlo and by lattice counting.
inline CriterionResult volume(const Options& opt) {
  const double target = kPi * kPi / 2.0;
  const VolumeEstimate est = mc_volume(GaugeParams{}, 10000000, opt.seed, resolve_threads(opt.threads));
  const double mc_rel = std::fabs(est.volume - target) / target;
  const u64 count = brute_count_t4(GaugeParams{}, 1000000, resolve_threads(opt.threads));
  const double lattice_rel = std::fabs(static_cast<double>(count) / 1e6 - target) / target;
  return detail::make(mc_rel <= 0.01 && lattice_rel <= 0.05,
                      "MC " + detail::fmt(est.volume, 6) + " (+/- " + detail::fmt(est.std_error, 2) + ", rel " +
                          detail::fmt(mc_rel, 3) + "); lattice " + std::to_string(count) + "/1e6 (rel " +
                          detail::fmt(lattice_rel, 3) + ")",
                      "MC within 1%, lattice within 5% of pi^2/2");
}

// 13. Byte-identical scan output for 1 and 8 threads.
inline CriterionResult determinism(const Options&) {
  auto run = [](unsigned threads) {
    ScanConfig cfg;
    cfg.x_max = 1000000;
    cfg.segment_len = 1 << 16;
    cfg.threads = threads;
    std::string csv = std::string(kSampleCsvHeader) + "\n";
    const RecordTable rt = scan(cfg, [&](const CountSample& c) { csv += sample_csv_row(c) + "\n"; });
    return std::pair{csv, records_json(rt).dump(2)};
  };
  const auto one = run(1), eight = run(8);
  const bool ok = one.first == eight.first && one.second == eight.second;
  return detail::make(ok,
                      std::string("CSV ") + (one.first == eight.first ? "identical" : "DIFFERENT") + " (" +
                          std::to_string(one.first.size()) + " bytes), JSON " +
                          (one.second == eight.second ? "identical" : "DIFFERENT"),
                      "bit-identical");
}

inline std::vector<Criterion> criteria(const Options& opt) {
  auto wrap = [&](CriterionResult (*f)(const Options&)) { return [f, opt] { return f(opt); }; };
  return {
      {1, "arith", "oracle equivalence: count_S vs Z^3 enumeration", wrap(oracle_equivalence)},
      {2, "arith", "rho prefix sums equal count_S", wrap(rho_consistency)},
      {3, "identities", "coefficient identity sum c_n = pi^2/4", wrap(coefficient_identity)},
      {4, "identities", "square-root expansion within tail bound", wrap(lemma1_expansion)},
      {5, "identities", "S(sqrt x; n) error constant is absolute", wrap(expansion_constant)},
      {6, "identities", "|S - 2M| / sqrt(x) bounded", wrap(smoothed_gap)},
      {7, "identities", "E/sqrt(x) - 2Q bounded", wrap(q_identity)},
      {8, "scan", "|E| / (sqrt(x) ln x) bounded", wrap(corollary_bound)},
      {9, "identities", "|E_{3/2}(sqrt x)| / sqrt(x) bounded", wrap(riesz32_bound)},
      {10, "scan", "signed excursions per decade", wrap(omega_evidence)},
      {11, "gauge", "gauge metric properties", wrap(gauge_properties)},
      {12, "gauge", "unit-ball volume", wrap(volume)},
      {13, "scan", "thread-count determinism", wrap(determinism)},
  };
}

inline CriterionResult run_criterion(const Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = c.run();
  } catch (const std::exception& e) {
    r = detail::make(false, std::string("exception: ") + e.what(), "-");
  }
  r.id = c.id;
  r.suite = c.suite;
  r.name = c.name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << "C" << (r.id < 10 ? "0" : "") << r.id << " " << r.name
     << " | observed: " << r.observed << " | threshold: " << r.threshold << " | " << detail::fmt(r.seconds, 3)
     << " s";
  if (!r.detail.empty()) os << "\n       " << r.detail;
  return os.str();
}

}  // namespace hcount::verify
