#pragma once

namespace logsum {

// Kahan compensated accumulator; summation order is part of every contract
// that uses it, so keep additions sequential.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }
  void reset() { s_ = 0.0; c_ = 0.0; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace logsum
