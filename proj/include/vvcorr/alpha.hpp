#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vvcorr {

// Renyi order parameter on [1, +infinity].
//
// The Hoelder conjugate a' = a/(a-1) is kept as a separate accessor with the
// limit conventions a=1 -> a'=+inf and a=inf -> a'=1; most formulas only need
// 1/a' = 1 - 1/a, which is finite on the whole range.
class Alpha {
 public:
  explicit Alpha(double v) : v_(v) {
    if (std::isnan(v) || v < 1.0) {
      throw std::invalid_argument("Alpha: order must be >= 1");
    }
  }

  static Alpha infinity() { return Alpha(std::numeric_limits<double>::infinity()); }

  double value() const { return v_; }
  bool is_infinity() const { return std::isinf(v_); }
  bool is_one() const { return v_ == 1.0; }

  // a' = a/(a-1); +inf at a=1, 1 at a=inf.
  double conjugate() const {
    if (is_one()) return std::numeric_limits<double>::infinity();
    if (is_infinity()) return 1.0;
    return v_ / (v_ - 1.0);
  }

  // 1/a' = 1 - 1/a; 0 at a=1, 1 at a=inf.
  double inv_conjugate() const {
    if (is_infinity()) return 1.0;
    return 1.0 - 1.0 / v_;
  }

 private:
  double v_;
};

}  // namespace vvcorr
