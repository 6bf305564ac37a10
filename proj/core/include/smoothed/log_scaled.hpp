#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <span>

namespace smoothed {

/// A positive number stored as its natural logarithm.
///
/// Menu prices in the lottery constructions grow like 4^i divided by a product
/// of small gaps, so they leave binary64 range after a few hundred entries.
/// Multiplication and division are exact in the log domain; addition uses the
/// log-sum-exp form and never materializes either operand. Zero is represented
/// by ln_value = -inf.
class LogScaled {
 public:
  constexpr LogScaled() = default;

  static LogScaled from_log(double ln_value) { return LogScaled(ln_value); }
  /// value must be >= 0.
  static LogScaled from_linear(double value);
  static LogScaled zero() { return LogScaled(-std::numeric_limits<double>::infinity()); }
  static LogScaled one() { return LogScaled(0.0); }

  double ln() const { return ln_value_; }
  bool is_zero() const { return ln_value_ == -std::numeric_limits<double>::infinity(); }
  /// exp(ln); overflows to +inf / underflows to 0 outside binary64 range.
  double linear() const { return std::exp(ln_value_); }
  /// True when linear() is finite and not subnormal.
  bool representable() const { return ln_value_ < 709.0 && ln_value_ > -708.0; }

  LogScaled& operator*=(LogScaled o) {
    ln_value_ += o.ln_value_;
    return *this;
  }
  LogScaled& operator/=(LogScaled o) {
    ln_value_ -= o.ln_value_;
    return *this;
  }
  LogScaled& operator+=(LogScaled o);

  friend LogScaled operator*(LogScaled a, LogScaled b) { return a *= b; }
  friend LogScaled operator/(LogScaled a, LogScaled b) { return a /= b; }
  friend LogScaled operator+(LogScaled a, LogScaled b) { return a += b; }

  /// |a - b|, computed as max * (1 - exp(ln min - ln max)).
  friend LogScaled abs_difference(LogScaled a, LogScaled b);

  friend bool operator==(LogScaled a, LogScaled b) { return a.ln_value_ == b.ln_value_; }
  friend std::partial_ordering operator<=>(LogScaled a, LogScaled b) {
    return a.ln_value_ <=> b.ln_value_;
  }

 private:
  explicit constexpr LogScaled(double ln_value) : ln_value_(ln_value) {}
  double ln_value_ = -std::numeric_limits<double>::infinity();
};

/// ln(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);
/// ln(sum_i exp(x_i)); -inf for an empty range.
double log_sum_exp(std::span<const double> xs);
/// ln(exp(a) - exp(b)) for a >= b; -inf when equal.
double log_sub(double a, double b);

}  // namespace smoothed
