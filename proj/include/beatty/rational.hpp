#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "beatty/errors.hpp"

namespace beatty {

using BigInt = boost::multiprecision::cpp_int;

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

inline BigInt pow10(unsigned k) {
  BigInt r = 1;
  BigInt base = 10;
  while (k != 0) {
    if (k & 1u) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

// Floor division, den > 0. BigInt's operator/ truncates toward zero.
inline BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

inline int sign_of(const BigInt& v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }

// Renders num/den (den > 0) with `sig` significant digits, round half up,
// plain fixed-point notation (no exponent form).
inline std::string decimal_string(BigInt num, BigInt den, unsigned sig) {
  if (den <= 0) throw DomainError("decimal_string: denominator must be positive");
  if (sig == 0) throw DomainError("decimal_string: need at least one significant digit");
  if (num == 0) return "0";
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  // exponent of the leading significant digit
  long exp10 = 0;
  BigInt ipart = num / den;
  if (ipart > 0) {
    exp10 = static_cast<long>(ipart.str().size()) - 1;
  } else {
    BigInt scaled = num;
    while (scaled < den) {
      scaled *= 10;
      --exp10;
    }
  }
  const long shift = static_cast<long>(sig) - 1 - exp10;
  BigInt n2 = num;
  BigInt d2 = den;
  if (shift >= 0)
    n2 *= pow10(static_cast<unsigned>(shift));
  else
    d2 *= pow10(static_cast<unsigned>(-shift));
  BigInt digits = (2 * n2 + d2) / (2 * d2);
  std::string ds = digits.str();
  if (ds.size() > sig) {  // rounding carried into a fresh leading digit
    ++exp10;
    digits /= 10;
    ds = digits.str();
  }
  std::string out;
  if (exp10 >= 0) {
    const auto point = static_cast<std::size_t>(exp10) + 1;
    if (point >= ds.size())
      out = ds + std::string(point - ds.size(), '0');
    else
      out = ds.substr(0, point) + "." + ds.substr(point);
  } else {
    out = "0." + std::string(static_cast<std::size_t>(-exp10) - 1, '0') + ds;
  }
  return sign + out;
}

// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(BigInt v) : num_(std::move(v)), den_(1) {}
  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  // Accepts "p/q", a bare integer, or a plain decimal literal ("0.25"), all
  // read as exact rationals. A leading '-' is allowed.
  static Rational parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  BigInt floor() const { return floor_div(num_, den_); }

  Rational reciprocal() const {
    if (num_ == 0) throw DomainError("reciprocal of zero");
    return Rational(den_, num_);
  }

  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

  friend Rational operator-(const Rational& a) {
    Rational r;
    r.num_ = -a.num_;
    r.den_ = a.den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const BigInt g = gcd(a.den_, b.den_);
    const BigInt bd = b.den_ / g;
    Rational r;
    r.num_ = a.num_ * bd + b.num_ * (a.den_ / g);
    r.den_ = a.den_ * bd;
    const BigInt g2 = gcd(r.num_, r.den_);
    if (g2 > 1) {
      r.num_ /= g2;
      r.den_ /= g2;
    }
    return r;
  }

  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    const BigInt g1 = gcd(a.num_, b.den_);
    const BigInt g2 = gcd(b.num_, a.den_);
    Rational r;
    r.num_ = (a.num_ / g1) * (b.num_ / g2);
    r.den_ = (a.den_ / g2) * (b.den_ / g1);
    return r;
  }

  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = BigInt(a.num_ * b.den_).compare(BigInt(b.num_ * a.den_));
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str();
  }

  std::string decimal(unsigned sig) const { return decimal_string(num_, den_, sig); }

 private:
  void normalize() {
    if (den_ == 0) throw DomainError("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const BigInt g = gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_, den_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline BigInt parse_big(std::string_view s) {
  if (!all_digits(s)) throw ParseError("expected an unsigned integer, got '" + std::string(s) + "'");
  return BigInt(std::string(s));
}

}  // namespace detail

inline Rational Rational::parse(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s.empty()) throw ParseError("empty rational literal");
  bool neg = false;
  if (s.front() == '-') {
    neg = true;
    s.remove_prefix(1);
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const BigInt p = detail::parse_big(s.substr(0, slash));
    auto qs = s.substr(slash + 1);
    const BigInt q = detail::parse_big(qs);
    if (q == 0) throw DomainError("rational with zero denominator: '" + std::string(text) + "'");
    r = Rational(p, q);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto ip = s.substr(0, dot);
    auto fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw ParseError("malformed decimal literal '" + std::string(text) + "'");
    if (!ip.empty() && !detail::all_digits(ip)) throw ParseError("malformed decimal literal '" + std::string(text) + "'");
    if (!fp.empty() && !detail::all_digits(fp)) throw ParseError("malformed decimal literal '" + std::string(text) + "'");
    BigInt scaled = ip.empty() ? BigInt(0) : BigInt(std::string(ip));
    for (char c : fp) scaled = scaled * 10 + (c - '0');
    r = Rational(scaled, pow10(static_cast<unsigned>(fp.size())));
  } else {
    r = Rational(detail::parse_big(s));
  }
  return neg ? -r : r;
}

// Exact fraction accumulator that stays unreduced. Each incoming denominator
// is folded in through a gcd against the running denominator only, keeping
// the accumulator near the lcm of the inputs instead of their product.
class FractionSum {
 public:
  FractionSum() : num_(0), den_(1) {}

  void add(const BigInt& p, const BigInt& q) {
    if (q <= 0) throw DomainError("FractionSum: denominator must be positive");
    const BigInt g = gcd(BigInt(den_ % q), q);
    const BigInt m = q / g;
    num_ = num_ * m + (den_ / g) * p;
    den_ *= m;
  }

  void add_reciprocal(const BigInt& q) { add(BigInt(1), q); }
  void add(const Rational& r) { add(r.num(), r.den()); }

  // sign of *this - o
  int compare(const FractionSum& o) const {
    return BigInt(num_ * o.den_).compare(BigInt(o.num_ * den_));
  }
  int compare(const Rational& r) const {
    return BigInt(num_ * r.den()).compare(BigInt(r.num() * den_));
  }

  bool is_zero() const { return num_ == 0; }
  const BigInt& raw_num() const { return num_; }
  const BigInt& raw_den() const { return den_; }

  // Single full reduction; potentially the expensive step, done on demand.
  Rational to_rational() const { return Rational(num_, den_); }

  std::string decimal(unsigned sig) const { return decimal_string(num_, den_, sig); }

 private:
  BigInt num_, den_;
};

}  // namespace beatty
