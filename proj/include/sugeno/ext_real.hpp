#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>

#include "sugeno/error.hpp"

namespace sugeno {

/// Value in [0, inf]. Infinity is a tag, not an IEEE sentinel, so the
/// convention inf * 0 = 0 is applied by rule.
class ExtReal {
public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : value_(v) { check(v); }  // NOLINT(implicit)

  static constexpr ExtReal infinity() {
    ExtReal r;
    r.inf_ = true;
    return r;
  }
  static constexpr ExtReal zero() { return ExtReal(); }

  /// Accepts +inf from IEEE arithmetic (closed-form tails) and converts it.
  static ExtReal from_double(double v) {
    if (std::isinf(v) && v > 0) return infinity();
    return ExtReal(v);
  }

  constexpr bool is_inf() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }
  constexpr bool is_zero() const { return !inf_ && value_ == 0.0; }

  /// Finite payload; throws on infinity.
  double value() const {
    if (inf_) throw Error(ErrorKind::domain, "ExtReal::value() on infinity");
    return value_;
  }
  /// IEEE view, inf mapped to +infinity. Only for printing and sampling.
  double to_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.value_ == b.value_;
  }
  friend constexpr std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ && b.inf_) return std::partial_ordering::equivalent;
    if (a.inf_) return std::partial_ordering::greater;
    if (b.inf_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtReal::from_double(a.value_ + b.value_);
  }
  /// inf * 0 = 0 * inf = 0.
  friend ExtReal operator*(const ExtReal& a, const ExtReal& b) {
    if (a.is_zero() || b.is_zero()) return ExtReal();
    if (a.inf_ || b.inf_) return infinity();
    return ExtReal::from_double(a.value_ * b.value_);
  }
  /// Truncated difference: inf - a = inf for finite a, a - b clamps at 0.
  /// inf - inf is undefined and throws.
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ && b.inf_) throw Error(ErrorKind::domain, "inf - inf is undefined");
    if (a.inf_) return infinity();
    if (b.inf_) return ExtReal();
    return ExtReal(a.value_ > b.value_ ? a.value_ - b.value_ : 0.0);
  }

  ExtReal& operator+=(const ExtReal& o) { return *this = *this + o; }

private:
  static constexpr void check(double v) {
    if (!(v >= 0.0) || v == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorKind::domain, "ExtReal needs a finite nonnegative value");
    }
  }

  double value_ = 0.0;
  bool inf_ = false;
};

inline ExtReal min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }
inline ExtReal max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

inline std::ostream& operator<<(std::ostream& os, const ExtReal& x) {
  if (x.is_inf()) return os << "inf";
  return os << x.value();
}

/// Value in [-inf, inf], used for signed integrands and the symmetric integral.
class SignedExtReal {
public:
  enum class Kind : std::uint8_t { finite, pos_inf, neg_inf };

  constexpr SignedExtReal() = default;
  constexpr SignedExtReal(double v) : value_(v) {  // NOLINT(implicit)
    if (v != v) throw Error(ErrorKind::domain, "SignedExtReal from NaN");
    if (v == std::numeric_limits<double>::infinity()) {
      kind_ = Kind::pos_inf;
      value_ = 0.0;
    } else if (v == -std::numeric_limits<double>::infinity()) {
      kind_ = Kind::neg_inf;
      value_ = 0.0;
    }
  }
  SignedExtReal(const ExtReal& x)  // NOLINT(implicit)
      : value_(x.is_inf() ? 0.0 : x.value()), kind_(x.is_inf() ? Kind::pos_inf : Kind::finite) {}

  static constexpr SignedExtReal pos_infinity() { return SignedExtReal(Kind::pos_inf); }
  static constexpr SignedExtReal neg_infinity() { return SignedExtReal(Kind::neg_inf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::finite; }

  double to_double() const {
    switch (kind_) {
      case Kind::pos_inf: return std::numeric_limits<double>::infinity();
      case Kind::neg_inf: return -std::numeric_limits<double>::infinity();
      default: return value_;
    }
  }

  /// -1, 0 or 1; sign(0) = 0.
  int sign() const {
    const double v = to_double();
    return (v > 0) - (v < 0);
  }
  ExtReal abs() const {
    if (kind_ != Kind::finite) return ExtReal::infinity();
    return ExtReal(std::fabs(value_));
  }
  /// x v 0
  ExtReal positive_part() const {
    if (kind_ == Kind::pos_inf) return ExtReal::infinity();
    if (kind_ == Kind::neg_inf) return ExtReal();
    return ExtReal(value_ > 0 ? value_ : 0.0);
  }
  /// (-x) v 0
  ExtReal negative_part() const { return (-*this).positive_part(); }

  friend SignedExtReal operator-(const SignedExtReal& a) {
    switch (a.kind_) {
      case Kind::pos_inf: return neg_infinity();
      case Kind::neg_inf: return pos_infinity();
      default: return SignedExtReal(a.value_ == 0.0 ? 0.0 : -a.value_);
    }
  }
  friend SignedExtReal operator+(const SignedExtReal& a, const SignedExtReal& b) {
    if ((a.kind_ == Kind::pos_inf && b.kind_ == Kind::neg_inf) ||
        (a.kind_ == Kind::neg_inf && b.kind_ == Kind::pos_inf)) {
      throw Error(ErrorKind::domain, "inf - inf is undefined");
    }
    if (a.kind_ != Kind::finite) return a;
    if (b.kind_ != Kind::finite) return b;
    return SignedExtReal(a.value_ + b.value_);
  }

  friend bool operator==(const SignedExtReal& a, const SignedExtReal& b) {
    return a.to_double() == b.to_double();
  }
  friend std::partial_ordering operator<=>(const SignedExtReal& a, const SignedExtReal& b) {
    return a.to_double() <=> b.to_double();
  }

private:
  constexpr explicit SignedExtReal(Kind k) : kind_(k) {}

  double value_ = 0.0;
  Kind kind_ = Kind::finite;
};

inline SignedExtReal max(const SignedExtReal& a, const SignedExtReal& b) { return a < b ? b : a; }
inline SignedExtReal min(const SignedExtReal& a, const SignedExtReal& b) { return b < a ? b : a; }

inline std::ostream& operator<<(std::ostream& os, const SignedExtReal& x) {
  switch (x.kind()) {
    case SignedExtReal::Kind::pos_inf: return os << "inf";
    case SignedExtReal::Kind::neg_inf: return os << "-inf";
    default: return os << x.to_double();
  }
}

}  // namespace sugeno
