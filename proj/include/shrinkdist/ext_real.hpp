#pragma once

#include <cmath>
#include <compare>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace shrinkdist {

// Real line extended by the two infinities. Infinite states are explicit so
// that regime dispatch compares them exactly.
class ExtReal {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  constexpr ExtReal() = default;

  // Floating infinities are mapped onto the infinite states; NaN is rejected.
  ExtReal(double v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v)) throw std::invalid_argument("ExtReal: NaN is not an extended real");
    if (std::isinf(v)) {
      kind_ = v > 0 ? Kind::PosInf : Kind::NegInf;
    } else {
      kind_ = Kind::Finite;
      value_ = v;
    }
  }

  static constexpr ExtReal pos_inf() { return ExtReal(Kind::PosInf); }
  static constexpr ExtReal neg_inf() { return ExtReal(Kind::NegInf); }
  // sign(s)*infinity; s must be nonzero.
  static ExtReal signed_inf(double s) {
    if (s == 0.0) throw std::invalid_argument("ExtReal: sign(0)*infinity is undefined");
    return s > 0 ? pos_inf() : neg_inf();
  }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  constexpr bool is_infinite() const { return kind_ != Kind::Finite; }

  double value() const {
    if (!is_finite()) throw std::domain_error("ExtReal: value() of an infinite extended real");
    return value_;
  }

  // IEEE view, for feeding Phi and friends.
  constexpr double to_double() const {
    switch (kind_) {
      case Kind::NegInf: return -std::numeric_limits<double>::infinity();
      case Kind::PosInf: return std::numeric_limits<double>::infinity();
      default: return value_;
    }
  }

  constexpr int sign() const {
    if (kind_ == Kind::PosInf) return 1;
    if (kind_ == Kind::NegInf) return -1;
    return (value_ > 0) - (value_ < 0);
  }

  ExtReal abs() const { return sign() < 0 ? -*this : *this; }

  constexpr ExtReal operator-() const {
    if (kind_ == Kind::PosInf) return neg_inf();
    if (kind_ == Kind::NegInf) return pos_inf();
    ExtReal r;
    r.value_ = -value_;
    return r;
  }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.is_finite() && b.is_finite()) return ExtReal(a.value_ + b.value_);
    if (a.is_infinite() && b.is_infinite() && a.kind_ != b.kind_)
      throw std::domain_error("ExtReal: infinity minus infinity is undefined");
    return a.is_infinite() ? a : b;
  }
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }

  // Multiplication by a finite scalar; 0 * infinity is rejected.
  friend ExtReal operator*(double s, const ExtReal& x) {
    if (x.is_finite()) return ExtReal(s * x.value_);
    if (s == 0.0) throw std::domain_error("ExtReal: zero times infinity is undefined");
    return s > 0 ? x : -x;
  }
  friend ExtReal operator*(const ExtReal& x, double s) { return s * x; }

  friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    auto rank = [](Kind k) { return k == Kind::NegInf ? 0 : k == Kind::Finite ? 1 : 2; };
    if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
    if (a.is_finite()) return a.value_ <=> b.value_;
    return std::partial_ordering::equivalent;
  }
  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.kind_ == b.kind_ && (!a.is_finite() || a.value_ == b.value_);
  }

  std::string to_string() const;

 private:
  constexpr explicit ExtReal(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  double value_ = 0.0;
};

inline std::string ExtReal::to_string() const {
  if (is_pos_inf()) return "+inf";
  if (is_neg_inf()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

// Parses "+inf", "inf", "-inf" or a decimal number.
inline ExtReal parse_ext_real(const std::string& s) {
  if (s == "+inf" || s == "inf" || s == "Infinity" || s == "+Infinity") return ExtReal::pos_inf();
  if (s == "-inf" || s == "-Infinity") return ExtReal::neg_inf();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an extended real: '" + s + "'");
  }
  if (used != s.size() || std::isnan(v)) throw std::invalid_argument("not an extended real: '" + s + "'");
  return ExtReal(v);
}

}  // namespace shrinkdist
