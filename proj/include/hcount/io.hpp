#pragma once
// Text formats: sample CSV, records JSON, decade summary CSV. Reals use 10
// significant digits with '.' as decimal separator; lines end in LF.

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcount/counting.hpp"
#include "hcount/scanner.hpp"

namespace hcount {

inline constexpr const char* kSampleCsvHeader = "x,s_left,s_right,e_left,e_right,e_norm_left,e_norm_right";

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string sample_csv_row(const CountSample& c) {
  std::string row = std::to_string(c.x);
  row += ',';
  row += std::to_string(c.s_left);
  row += ',';
  row += std::to_string(c.s_right);
  for (double v : {c.e_left, c.e_right, c.e_norm_left, c.e_norm_right}) {
    row += ',';
    row += format_real(v);
  }
  return row;
}

// [{"x": int, "value": float, "kind": "max"|"min"}, ...] ordered by x, max
// before min at the same abscissa.
inline nlohmann::json records_json(const RecordTable& rt) {
  struct Entry {
    Record r;
    bool is_max;
  };
  std::vector<Entry> all;
  for (const Record& r : rt.max_records) all.push_back({r, true});
  for (const Record& r : rt.min_records) all.push_back({r, false});
  std::stable_sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
    return a.r.x != b.r.x ? a.r.x < b.r.x : (a.is_max && !b.is_max);
  });
  nlohmann::json out = nlohmann::json::array();
  for (const Entry& e : all) {
    out.push_back({{"x", e.r.x}, {"value", e.r.value}, {"kind", e.is_max ? "max" : "min"}});
  }
  return out;
}

inline constexpr const char* kDecadeCsvHeader = "decade_lo,decade_hi,max_e_norm,argmax,min_e_norm,argmin,max_abs_q";

inline void write_decade_csv(std::ostream& os, const std::vector<DecadeRow>& rows) {
  os << kDecadeCsvHeader << '\n';
  for (const DecadeRow& r : rows) {
    os << r.lo << ',' << r.hi << ',' << format_real(r.max_e_norm) << ',' << r.argmax << ','
       << format_real(r.min_e_norm) << ',' << r.argmin << ',' << format_real(r.max_abs_q) << '\n';
  }
}

}  // namespace hcount
