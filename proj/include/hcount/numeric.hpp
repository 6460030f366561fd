#pragma once

#include <cmath>

namespace hcount {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2 = 1.414213562373095048801688724209698079;

// pi^2 / 2 = 4.934802200544679309417245499938075567657 as an unevaluated
// double-double pair.
inline constexpr double kHalfPiSqHi = 4.934802200544679;
inline constexpr double kHalfPiSqLo = 3.1326477543698557e-16;

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// base^(n + 1/2) for base >= 0. Small exponents use one square root and
// repeated multiplication; large ones go through exp/log.
inline double half_int_power(double base, unsigned n) {
  if (base <= 0.0) return 0.0;
  if (n + 0.5 >= 8.0) return std::exp((n + 0.5) * std::log(base));
  double r = std::sqrt(base);
  for (unsigned k = 0; k < n; ++k) r *= base;
  return r;
}

}  // namespace hcount
