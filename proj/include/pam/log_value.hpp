#pragma once

#include <cmath>
#include <limits>

namespace pam {

// Sign plus log-magnitude representation. Quantities like exp(lambda^4 t / nu)
// leave the double range long before the times we care about, so every
// moment-facing routine has a variant that works in this representation.
//
// Invariant: sign == 0  <=>  log_abs == -infinity.
struct LogValue {
  int sign = 0;
  double log_abs = -std::numeric_limits<double>::infinity();

  static LogValue zero() { return {}; }

  static LogValue from_log(double log_magnitude, int s = +1) {
    if (std::isinf(log_magnitude) && log_magnitude < 0) return {};
    return {s >= 0 ? +1 : -1, log_magnitude};
  }

  static LogValue from_value(double v) {
    if (v == 0.0) return {};
    return {v > 0.0 ? +1 : -1, std::log(std::abs(v))};
  }

  bool is_zero() const { return sign == 0; }

  // May overflow to +-inf or underflow to 0; callers stay in log form when
  // magnitudes are at risk.
  double to_value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
  }

  LogValue operator*(const LogValue& o) const {
    if (sign == 0 || o.sign == 0) return {};
    return {sign * o.sign, log_abs + o.log_abs};
  }

  LogValue operator/(const LogValue& o) const {
    if (sign == 0) return {};
    return {sign * o.sign, log_abs - o.log_abs};
  }

  LogValue operator-() const {
    if (sign == 0) return {};
    return {-sign, log_abs};
  }

  // Signed log-sum-exp.
  LogValue operator+(const LogValue& o) const {
    if (sign == 0) return o;
    if (o.sign == 0) return *this;
    const LogValue& big = (log_abs >= o.log_abs) ? *this : o;
    const LogValue& small = (log_abs >= o.log_abs) ? o : *this;
    const double d = small.log_abs - big.log_abs;  // <= 0
    if (big.sign == small.sign) {
      return {big.sign, big.log_abs + std::log1p(std::exp(d))};
    }
    const double m = std::exp(d);
    if (m == 1.0) return {};  // exact cancellation
    return {big.sign, big.log_abs + std::log1p(-m)};
  }

  LogValue operator-(const LogValue& o) const { return *this + (-o); }

  bool operator<(const LogValue& o) const {
    if (sign != o.sign) return sign < o.sign;
    if (sign == 0) return false;
    return sign > 0 ? log_abs < o.log_abs : log_abs > o.log_abs;
  }
  bool operator<=(const LogValue& o) const { return !(o < *this); }
};

inline LogValue scale(const LogValue& v, double factor) {
  return v * LogValue::from_value(factor);
}

}  // namespace pam
