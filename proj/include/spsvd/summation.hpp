#pragma once

#include <cmath>

namespace spsvd {

// Neumaier-compensated accumulator. The entrywise objectives here sum up to
// ~1e7 terms spanning many orders of magnitude (contaminated entries reach
// 1e8), where naive summation visibly loses the 1e-12 comparisons the tests
// pin down.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace spsvd
