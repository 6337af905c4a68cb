#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace jacobi {

// Kahan-Neumaier compensated accumulator.
class CompensatedSum {
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

// Product of many signed factors kept as log|.| plus a separate sign, so
// clustered spectra at N >= 32 cannot underflow or overflow intermediates.
class SignedLogProduct {
public:
  void multiply(double factor) {
    if (factor == 0.0) {
      zero_ = true;
      return;
    }
    if (factor < 0.0) sign_ = -sign_;
    log_abs_ += std::log(std::abs(factor));
  }
  // factor must be nonzero
  void divide(double factor) {
    if (factor < 0.0) sign_ = -sign_;
    log_abs_ -= std::log(std::abs(factor));
  }
  bool is_zero() const { return zero_; }
  int sign() const { return zero_ ? 0 : sign_; }
  double log_abs() const { return log_abs_; }
  double value() const { return zero_ ? 0.0 : sign_ * std::exp(log_abs_); }

private:
  double log_abs_ = 0.0;
  int sign_ = 1;
  bool zero_ = false;
};

inline bool all_finite(const std::vector<double>& xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

inline bool strictly_increasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i])) return false;
  return true;
}

}  // namespace jacobi
