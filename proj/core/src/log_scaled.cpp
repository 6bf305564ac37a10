#include "smoothed/log_scaled.hpp"

#include <algorithm>
#include <stdexcept>

namespace smoothed {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LogScaled LogScaled::from_linear(double value) {
  if (!(value >= 0.0)) throw std::invalid_argument("LogScaled: value must be nonnegative");
  return LogScaled(value == 0.0 ? kNegInf : std::log(value));
}

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sub(double a, double b) {
  if (b == kNegInf) return a;
  if (b > a) throw std::domain_error("log_sub: result would be negative");
  if (a == b) return kNegInf;
  return a + std::log(-std::expm1(b - a));
}

double log_sum_exp(std::span<const double> xs) {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - hi);
  return hi + std::log(s);
}

LogScaled& LogScaled::operator+=(LogScaled o) {
  ln_value_ = log_add(ln_value_, o.ln_value_);
  return *this;
}

LogScaled abs_difference(LogScaled a, LogScaled b) {
  if (a < b) std::swap(a, b);
  return LogScaled::from_log(log_sub(a.ln(), b.ln()));
}

}  // namespace smoothed
