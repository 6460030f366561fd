#pragma once
// Exact sweep over every jump point of E(x) = S(x) - (pi^2 / 2) x.
//
// S only jumps at integers l with rho(l) > 0 and E decreases linearly in
// between, so the supremum of E(x)/sqrt(x) over a range is attained at some
// x = l from the right and the infimum at some x = l from the left. The scan
// evaluates both one-sided limits at every jump and keeps running records.
//
// The range is cut into fixed windows. Pass 1 sums rho over each window in
// parallel; a serial prefix sum turns those totals into the exact S at every
// window start; pass 2 re-sieves each window in parallel and evaluates E.
// Windows are merged in ascending order, so results do not depend on the
// number of threads.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcount/arith.hpp"
#include "hcount/counting.hpp"
#include "hcount/errors.hpp"
#include "hcount/parallel.hpp"
#include "hcount/riesz.hpp"

namespace hcount {

struct ScanConfig {
  u64 x_max = 0;
  u64 segment_len = u64{1} << 20;
  u64 sample_stride = 1;
  unsigned threads = 0;  // 0: HB_THREADS or hardware concurrency
  u64 segment_budget = kDefaultSegmentBudget;

  void validate() const {
    if (x_max < 2) throw PreconditionError("scan: x_max must be at least 2");
    if (segment_len == 0) throw PreconditionError("scan: segment_len must be positive");
    if (sample_stride == 0) throw PreconditionError("scan: sample_stride must be positive");
    if (segment_len > segment_budget) {
      throw BudgetError("scan: segment_len " + std::to_string(segment_len) + " exceeds budget " +
                        std::to_string(segment_budget));
    }
  }
};

struct Record {
  u64 x = 0;
  double value = 0.0;
  bool operator==(const Record&) const = default;
};

inline constexpr int kMaxDecades = 20;

// Extremes of E(x)/sqrt(x) over jump points in [10^d, 10^(d+1)).
struct DecadeStats {
  bool present = false;
  double max_e_norm = -std::numeric_limits<double>::infinity();
  u64 argmax = 0;
  double min_e_norm = std::numeric_limits<double>::infinity();
  u64 argmin = 0;
  u64 jumps = 0;
  bool operator==(const DecadeStats&) const = default;

  void absorb(const DecadeStats& later) {
    if (!later.present) return;
    if (later.max_e_norm > max_e_norm) {
      max_e_norm = later.max_e_norm;
      argmax = later.argmax;
    }
    if (later.min_e_norm < min_e_norm) {
      min_e_norm = later.min_e_norm;
      argmin = later.argmin;
    }
    jumps += later.jumps;
    present = true;
  }
};

// Running signed records over jump points in [x_lo, x_hi).
struct RecordTable {
  u64 x_lo = 0;
  u64 x_hi = 0;
  u64 s_end = 0;  // S(x_hi)
  u64 jumps = 0;
  std::vector<Record> max_records;  // strictly increasing e_norm_right
  std::vector<Record> min_records;  // strictly decreasing e_norm_left
  std::vector<DecadeStats> decades = std::vector<DecadeStats>(kMaxDecades);
  // max |E(x)| / (sqrt(x) ln x) over jumps x >= 100, and where it occurs.
  double corollary_constant = 0.0;
  u64 corollary_x = 0;

  bool operator==(const RecordTable&) const = default;
};

// Appends `later` (covering [a.x_hi, ...)) onto `a`.
inline void merge_into(RecordTable& a, const RecordTable& later) {
  if (a.x_hi != later.x_lo) throw PreconditionError("merge: tables do not cover adjacent ranges");
  for (const Record& r : later.max_records) {
    if (a.max_records.empty() || r.value > a.max_records.back().value) a.max_records.push_back(r);
  }
  for (const Record& r : later.min_records) {
    if (a.min_records.empty() || r.value < a.min_records.back().value) a.min_records.push_back(r);
  }
  for (int d = 0; d < kMaxDecades; ++d) a.decades[d].absorb(later.decades[d]);
  if (later.corollary_constant > a.corollary_constant) {
    a.corollary_constant = later.corollary_constant;
    a.corollary_x = later.corollary_x;
  }
  a.x_hi = later.x_hi;
  a.s_end = later.s_end;
  a.jumps += later.jumps;
}

inline RecordTable merge(RecordTable a, const RecordTable& later) {
  merge_into(a, later);
  return a;
}

using SampleSink = std::function<void(const CountSample&)>;

namespace detail {

inline int decade_of(u64 x) {
  int d = 0;
  while (x >= 10) {
    x /= 10;
    ++d;
  }
  return d;
}

inline u64 pow10(int d) {
  u64 p = 1;
  for (int i = 0; i < d; ++i) p *= 10;
  return p;
}

struct WindowResult {
  RecordTable table;
  std::vector<CountSample> strided;
  std::vector<CountSample> record_samples;  // samples at local max/min records
};

// Evaluates E at every jump in the window [lo, hi) given S(lo) and the
// number of jumps (l >= 1) before lo.
inline WindowResult scan_window(u64 lo, u64 hi, u64 s_lo, u64 jump_lo, u64 stride, const R2Table& r2,
                                std::vector<u64>& density) {
  WindowResult out;
  RecordTable& t = out.table;
  t.x_lo = lo;
  t.x_hi = hi;
  density.resize(hi - lo);
  rho_fill(lo, hi, r2, density);

  u64 s = s_lo;
  u64 j = jump_lo;
  double best_max = -std::numeric_limits<double>::infinity();
  double best_min = std::numeric_limits<double>::infinity();
  CountSample best_max_sample, best_min_sample;
  int dec = detail::decade_of(std::max<u64>(lo, 1));
  u64 dec_end = pow10(dec + 1);
  DecadeStats* ds = &t.decades[dec];
  const double log_floor = std::log(static_cast<double>(std::max<u64>(lo, 100)));

  for (u64 i = 0; i < hi - lo; ++i) {
    const u64 d = density[i];
    if (d == 0) continue;
    const u64 l = lo + i;
    if (l == 0) {
      s += d;
      continue;
    }
    if (l >= dec_end) {
      dec = detail::decade_of(l);
      dec_end = pow10(dec + 1);
      ds = &t.decades[dec];
    }
    const CountSample c = error_sample(l, s, d);
    ++t.jumps;
    ds->present = true;
    ++ds->jumps;
    if (c.e_norm_right > ds->max_e_norm) {
      ds->max_e_norm = c.e_norm_right;
      ds->argmax = l;
    }
    if (c.e_norm_left < ds->min_e_norm) {
      ds->min_e_norm = c.e_norm_left;
      ds->argmin = l;
    }
    bool is_record = false;
    if (c.e_norm_right > best_max) {
      best_max = c.e_norm_right;
      t.max_records.push_back({l, c.e_norm_right});
      is_record = true;
    }
    if (c.e_norm_left < best_min) {
      best_min = c.e_norm_left;
      t.min_records.push_back({l, c.e_norm_left});
      is_record = true;
    }
    if (l >= 100) {
      const double a = std::max(std::fabs(c.e_norm_left), std::fabs(c.e_norm_right));
      // ln(l) >= log_floor, so a / log_floor bounds the candidate from above.
      if (a > t.corollary_constant * log_floor) {
        const double k = a / std::log(static_cast<double>(l));
        if (k > t.corollary_constant) {
          t.corollary_constant = k;
          t.corollary_x = l;
        }
      }
    }
    if (j % stride == 0) {
      out.strided.push_back(c);
    } else if (is_record) {
      out.record_samples.push_back(c);
    }
    ++j;
    s += d;
  }
  t.s_end = s;
  return out;
}

}  // namespace detail

// Scans jump points in [lo, hi) (l = 0 is never a sample). S(lo) is taken
// from count_S; stride counting starts at the first jump in the range.
inline RecordTable scan_range(u64 lo, u64 hi, const ScanConfig& cfg, const SampleSink& sink = {}) {
  cfg.validate();
  if (hi > cfg.x_max || lo > hi) throw PreconditionError("scan_range: [lo, hi) must lie within [0, x_max)");
  const unsigned threads = resolve_threads(cfg.threads);
  const R2Table r2 = r2_sieve(0, isqrt_floor(hi > 0 ? hi - 1 : 0) + 1, cfg.segment_budget);

  const u64 seg = cfg.segment_len;
  const std::size_t windows = static_cast<std::size_t>((hi - lo + seg - 1) / seg);
  auto window_lo = [&](std::size_t w) { return lo + static_cast<u64>(w) * seg; };
  auto window_hi = [&](std::size_t w) { return std::min(hi, window_lo(w) + seg); };

  // Pass 1: rho totals and jump counts per window.
  std::vector<u64> totals(windows, 0), jump_counts(windows, 0);
  parallel_for(windows, threads, [&](std::size_t w) {
    std::vector<u64> density(window_hi(w) - window_lo(w));
    rho_fill(window_lo(w), window_hi(w), r2, density);
    u64 s = 0, jumps = 0;
    for (u64 i = 0; i < density.size(); ++i) {
      s += density[i];
      if (density[i] != 0 && window_lo(w) + i != 0) ++jumps;
    }
    totals[w] = s;
    jump_counts[w] = jumps;
  });

  std::vector<u64> s_start(windows), j_start(windows);
  u64 s = count_S(lo, r2), j = 0;
  constexpr u64 kGuard = u64{1} << 63;
  for (std::size_t w = 0; w < windows; ++w) {
    s_start[w] = s;
    j_start[w] = j;
    if (totals[w] > kGuard - s) throw std::overflow_error("scan: S(x) would exceed 2^63");
    s += totals[w];
    j += jump_counts[w];
  }

  // Pass 2 in batches so that buffered samples stay bounded.
  RecordTable result;
  result.x_lo = result.x_hi = lo;
  result.s_end = s_start.empty() ? s : s_start[0];
  const std::size_t batch = static_cast<std::size_t>(threads) * 2;
  std::vector<detail::WindowResult> pending;
  std::vector<std::vector<u64>> scratch(batch);
  for (std::size_t first = 0; first < windows; first += batch) {
    const std::size_t count = std::min(batch, windows - first);
    pending.assign(count, {});
    parallel_for(count, threads, [&](std::size_t k) {
      const std::size_t w = first + k;
      pending[k] = detail::scan_window(window_lo(w), window_hi(w), s_start[w], j_start[w], cfg.sample_stride,
                                       r2, scratch[k]);
    });
    for (auto& wr : pending) {
      const double prev_max = result.max_records.empty() ? -std::numeric_limits<double>::infinity()
                                                         : result.max_records.back().value;
      const double prev_min = result.min_records.empty() ? std::numeric_limits<double>::infinity()
                                                         : result.min_records.back().value;
      merge_into(result, wr.table);
      if (!sink) continue;
      // Emit strided samples plus samples that became global records, in x order.
      std::size_t a = 0, b = 0;
      double run_max = prev_max, run_min = prev_min;
      auto global_record = [&](const CountSample& c) {
        bool rec = false;
        if (c.e_norm_right > run_max) {
          run_max = c.e_norm_right;
          rec = true;
        }
        if (c.e_norm_left < run_min) {
          run_min = c.e_norm_left;
          rec = true;
        }
        return rec;
      };
      while (a < wr.strided.size() || b < wr.record_samples.size()) {
        const bool take_strided =
            b >= wr.record_samples.size() || (a < wr.strided.size() && wr.strided[a].x < wr.record_samples[b].x);
        if (take_strided) {
          global_record(wr.strided[a]);
          sink(wr.strided[a++]);
        } else {
          const CountSample& c = wr.record_samples[b++];
          if (global_record(c)) sink(c);
        }
      }
    }
  }
  return result;
}

inline RecordTable scan(const ScanConfig& cfg, const SampleSink& sink = {}) {
  return scan_range(0, cfg.x_max, cfg, sink);
}

struct DecadeRow {
  int decade = 0;
  u64 lo = 0;
  u64 hi = 0;
  double max_e_norm = 0.0;
  u64 argmax = 0;
  double min_e_norm = 0.0;
  u64 argmin = 0;
  double max_abs_q = 0.0;  // max |Q(sqrt(x))| over x in {argmax, argmin}
  u64 jumps = 0;
};

// One row per decade [10^d, 10^(d+1)) fully covered by the table.
inline std::vector<DecadeRow> decade_summary(const RecordTable& rt) {
  std::vector<DecadeRow> rows;
  for (int d = 0; d < kMaxDecades; ++d) {
    const DecadeStats& ds = rt.decades[d];
    const u64 dlo = detail::pow10(d), dhi = detail::pow10(d + 1);
    if (!ds.present || rt.x_lo > dlo || rt.x_hi < dhi) continue;
    rows.push_back({d, dlo, dhi, ds.max_e_norm, ds.argmax, ds.min_e_norm, ds.argmin, 0.0, ds.jumps});
  }
  if (rows.empty()) throw PreconditionError("decade_summary: no complete decade in scanned range");
  const R2Table r2 = r2_sieve(0, isqrt_floor(rows.back().hi) + 1);
  for (DecadeRow& row : rows) {
    for (u64 x : {row.argmax, row.argmin}) {
      row.max_abs_q = std::max(row.max_abs_q, std::fabs(q_value(static_cast<double>(x), r2).q_val));
    }
  }
  return rows;
}

}  // namespace hcount
