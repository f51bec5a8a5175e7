#pragma once

#include <cmath>

namespace gramdisc {

/*!
  Accumulates a sum with Neumaier's variant of Kahan summation.

  Unlike plain Kahan, the compensation stays correct when an addend is larger
  in magnitude than the running sum, which happens constantly in oscillatory
  trigonometric sums.
*/
struct CompensatedSum {
  double sum = 0.0;
  double compensation = 0.0;

  void operator+=(double value) noexcept {
    const double t = sum + value;
    if (std::fabs(sum) >= std::fabs(value)) {
      compensation += (sum - t) + value;
    } else {
      compensation += (value - t) + sum;
    }
    sum = t;
  }

  double value() const noexcept { return sum + compensation; }
};

/// Plain running sum with the same interface as CompensatedSum.
struct PlainSum {
  double sum = 0.0;

  void operator+=(double value) noexcept { sum += value; }
  double value() const noexcept { return sum; }
};

}  // namespace gramdisc
