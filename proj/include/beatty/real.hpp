#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "beatty/errors.hpp"
#include "beatty/rational.hpp"

namespace beatty {

// Closed interval with exact rational endpoints.
struct RationalInterval {
  Rational lo, hi;
  Rational width() const { return hi - lo; }
};

inline bool is_perfect_square(const BigInt& d) {
  if (d < 0) return false;
  const BigInt r = boost::multiprecision::sqrt(d);
  return r * r == d;
}

// [s/10^k, (s+1)/10^k] containing sqrt(d); width exactly 10^-k.
inline RationalInterval sqrt_enclosure(const BigInt& d, unsigned digits) {
  const BigInt scale = pow10(digits);
  const BigInt scaled = d * scale * scale;
  const BigInt s = boost::multiprecision::sqrt(scaled);
  return {Rational(s, scale), Rational(s + 1, scale)};
}

enum class RealKind { rational, surd, decimal };

// A positive-real parameter in one of three shapes:
//   rational  p/q
//   surd      (a + b*sqrt(d))/c with d not a perfect square
//   decimal   digit string trusted to `precision` significant digits; the
//             value is only known to lie within a half-ulp of that digit.
// Rational and surd values admit exact floor/compare; decimals are handled
// by interval arithmetic over exact rational endpoints and raise
// PrecisionExhausted when the declared digits cannot decide a question.
class RealValue {
 public:
  static RealValue parse(std::string_view text);

  static RealValue from_rational(Rational r) {
    RealValue v;
    v.kind_ = RealKind::rational;
    v.rat_ = std::move(r);
    return v;
  }

  static RealValue make_surd(BigInt a, BigInt b, BigInt d, BigInt c);
  static RealValue make_decimal(std::string digits, unsigned precision);

  RealKind kind() const { return kind_; }
  bool is_exact() const { return kind_ != RealKind::decimal; }

  const Rational& as_rational() const {
    if (kind_ != RealKind::rational) throw DomainError("RealValue: not a rational");
    return rat_;
  }

  const BigInt& surd_a() const { return a_; }
  const BigInt& surd_b() const { return b_; }
  const BigInt& surd_d() const { return d_; }
  const BigInt& surd_c() const { return c_; }

  const Rational& decimal_center() const { return rat_; }
  const Rational& decimal_radius() const { return radius_; }
  unsigned decimal_precision() const { return precision_; }

  RationalInterval enclosure(unsigned digits) const;

  // Certified sign of value - r. Throws PrecisionExhausted when a decimal's
  // declared digits straddle r.
  int compare(const Rational& r) const;

  bool is_positive() const { return compare(Rational(0)) > 0; }

  // Exact kinds only; a decimal reciprocal is not representable here.
  RealValue reciprocal() const;

  std::string to_string() const;

  friend bool operator==(const RealValue& x, const RealValue& y) {
    if (x.kind_ != y.kind_) return false;
    switch (x.kind_) {
      case RealKind::rational: return x.rat_ == y.rat_;
      case RealKind::surd: return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_ && x.c_ == y.c_;
      case RealKind::decimal: return x.digits_ == y.digits_ && x.precision_ == y.precision_;
    }
    return false;
  }

 private:
  RealValue() = default;

  RealKind kind_ = RealKind::rational;
  Rational rat_;            // rational value, or decimal center
  BigInt a_, b_, d_, c_;    // surd fields
  Rational radius_;         // decimal half-ulp
  std::string digits_;
  unsigned precision_ = 0;
};

namespace detail {

// sign of x + y*sqrt(d), d > 0 and not a perfect square
inline int quad_sign(const BigInt& x, const BigInt& y, const BigInt& d) {
  if (y == 0) return sign_of(x);
  if (x == 0) return sign_of(y);
  if (x > 0 && y > 0) return 1;
  if (x < 0 && y < 0) return -1;
  const int c = BigInt(x * x).compare(BigInt(y * y * d));
  return x > 0 ? c : -c;
}

// base + sum(coeff_i * sqrt(d_i)) +- radius. The normal form every affine
// expression alpha*n + gamma evaluates into.
struct AffineForm {
  Rational base;
  std::vector<std::pair<BigInt, Rational>> roots;  // (d, coeff), coeff != 0, d ascending
  Rational radius;                                 // >= 0; nonzero only with decimal inputs

  static AffineForm of(const RealValue& v) {
    AffineForm f;
    switch (v.kind()) {
      case RealKind::rational:
        f.base = v.as_rational();
        break;
      case RealKind::surd:
        f.base = Rational(v.surd_a(), v.surd_c());
        f.roots.emplace_back(v.surd_d(), Rational(v.surd_b(), v.surd_c()));
        break;
      case RealKind::decimal:
        f.base = v.decimal_center();
        f.radius = v.decimal_radius();
        break;
    }
    return f;
  }

  void scale_by(const BigInt& k) {
    const Rational rk{k};
    base *= rk;
    for (auto& [d, coeff] : roots) coeff *= rk;
    radius *= rk;
  }

  void add(const AffineForm& o) {
    base += o.base;
    radius += o.radius;
    for (const auto& [d, coeff] : o.roots) add_root(d, coeff);
  }

  void add_root(const BigInt& d, const Rational& coeff) {
    for (auto it = roots.begin(); it != roots.end(); ++it) {
      if (it->first == d) {
        it->second += coeff;
        if (it->second.is_zero()) roots.erase(it);
        return;
      }
      if (it->first > d) {
        roots.insert(it, {d, coeff});
        return;
      }
    }
    roots.emplace_back(d, coeff);
  }

  bool exact_rational() const { return roots.empty() && radius.is_zero(); }
  bool pure_quadratic() const { return roots.size() == 1 && radius.is_zero(); }

  RationalInterval enclosure(unsigned digits) const {
    Rational lo = base, hi = base;
    for (const auto& [d, coeff] : roots) {
      const RationalInterval e = sqrt_enclosure(d, digits);
      if (coeff.is_negative()) {
        lo += coeff * e.hi;
        hi += coeff * e.lo;
      } else {
        lo += coeff * e.lo;
        hi += coeff * e.hi;
      }
    }
    if (!radius.is_zero()) {
      lo -= radius;
      hi += radius;
    }
    return {lo, hi};
  }
};

// Digits needed so that sqrt-enclosure error is negligible next to `radius`.
inline unsigned digits_below(const Rational& radius) {
  const long n = static_cast<long>(radius.num().str().size());
  const long d = static_cast<long>(radius.den().str().size());
  const long k = d - n + 8;
  return k < 40 ? 40u : static_cast<unsigned>(k);
}

constexpr unsigned kRefineStartDigits = 40;
constexpr unsigned kRefineMaxDigits = 5120;

// Certified floor. Exact for rational and single-surd forms; decimal-tainted
// forms throw PrecisionExhausted when an integer boundary sits inside the
// uncertainty interval.
inline BigInt certified_floor(const AffineForm& form) {
  if (form.exact_rational()) return form.base.floor();
  if (form.pure_quadratic()) {
    const auto& [d, coeff] = form.roots.front();
    const RationalInterval iv = form.enclosure(kRefineStartDigits);
    const BigInt k0 = iv.lo.floor();
    if (iv.hi.floor() == k0) return k0;
    // value lies in [k0, k0+2); settle against k0+1 by exact squaring
    const BigInt c = lcm(form.base.den(), coeff.den());
    const BigInt a = form.base.num() * (c / form.base.den());
    const BigInt b = coeff.num() * (c / coeff.den());
    const int s = quad_sign(a - (k0 + 1) * c, b, d);
    return s >= 0 ? k0 + 1 : k0;
  }
  if (!form.radius.is_zero()) {
    const RationalInterval iv = form.enclosure(digits_below(form.radius));
    const BigInt lo = iv.lo.floor();
    if (iv.hi.floor() == lo) return lo;
    throw PrecisionExhausted(
        "declared decimal digits cannot separate the value from an integer boundary");
  }
  for (unsigned k = kRefineStartDigits; k <= kRefineMaxDigits; k *= 2) {
    const RationalInterval iv = form.enclosure(k);
    const BigInt lo = iv.lo.floor();
    if (iv.hi.floor() == lo) return lo;
  }
  throw PrecisionExhausted("sqrt enclosure refinement cap reached");
}

// Certified sign of form - r.
inline int certified_compare(const AffineForm& form, const Rational& r) {
  if (form.exact_rational()) {
    const auto c = form.base <=> r;
    return c == std::strong_ordering::less ? -1 : (c == std::strong_ordering::greater ? 1 : 0);
  }
  if (form.pure_quadratic()) {
    const auto& [d, coeff] = form.roots.front();
    const Rational shifted = form.base - r;
    const BigInt c = lcm(shifted.den(), coeff.den());
    const BigInt x = shifted.num() * (c / shifted.den());
    const BigInt y = coeff.num() * (c / coeff.den());
    return quad_sign(x, y, d);
  }
  if (!form.radius.is_zero()) {
    const RationalInterval iv = form.enclosure(digits_below(form.radius));
    if (iv.hi < r) return -1;
    if (iv.lo > r) return 1;
    throw PrecisionExhausted("declared decimal digits cannot decide the comparison");
  }
  for (unsigned k = kRefineStartDigits; k <= kRefineMaxDigits; k *= 2) {
    const RationalInterval iv = form.enclosure(k);
    if (iv.hi < r) return -1;
    if (iv.lo > r) return 1;
  }
  throw PrecisionExhausted("sqrt enclosure refinement cap reached");
}

inline void require_alpha(const RealValue& alpha) {
  if (alpha.kind() == RealKind::rational) {
    if (alpha.as_rational().num() <= 0) throw DomainError("alpha must be positive");
    return;
  }
  if (detail::certified_compare(AffineForm::of(alpha), Rational(0)) <= 0)
    throw DomainError("alpha must be positive");
}

inline void require_gamma(const RealValue& gamma) {
  if (gamma.kind() == RealKind::rational) {
    const Rational& g = gamma.as_rational();
    if (g.num() <= 0 || g.num() >= g.den())
      throw DomainError("gamma must lie strictly between 0 and 1");
    return;
  }
  const AffineForm f = AffineForm::of(gamma);
  if (detail::certified_compare(f, Rational(0)) <= 0 ||
      detail::certified_compare(f, Rational(1)) >= 0)
    throw DomainError("gamma must lie strictly between 0 and 1");
}

// Stepwise-reduced evaluation for the all-rational case: reduce alpha*n
// first, then fold in gamma over the gcd-shared denominator. Positive
// throughout, so the floor is a plain division.
inline BigInt floor_affine_rational(const Rational& alpha, const Rational& gamma,
                                    std::uint64_t n) {
  BigInt num = alpha.num() * n;
  BigInt den = alpha.den();
  const BigInt g1 = gcd(num, den);
  if (g1 > 1) {
    num /= g1;
    den /= g1;
  }
  const BigInt g2 = gcd(den, gamma.den());
  const BigInt s = gamma.den() / g2;
  const BigInt total = num * s + gamma.num() * (den / g2);
  return total / (den * s);
}

}  // namespace detail

inline RationalInterval RealValue::enclosure(unsigned digits) const {
  return detail::AffineForm::of(*this).enclosure(digits);
}

inline int RealValue::compare(const Rational& r) const {
  return detail::certified_compare(detail::AffineForm::of(*this), r);
}

inline RealValue RealValue::make_surd(BigInt a, BigInt b, BigInt d, BigInt c) {
  if (c == 0) throw DomainError("surd with zero denominator");
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  if (d <= 0) throw DomainError("surd radicand must be positive");
  if (is_perfect_square(d)) throw DomainError("surd radicand is a perfect square");
  if (b == 0) return from_rational(Rational(std::move(a), std::move(c)));
  // pull square factors out of d so equal radicands always share one spelling
  for (BigInt f = 2; f <= 100000 && f * f <= d; ++f) {
    while (d % (f * f) == 0) {
      d /= f * f;
      b *= f;
    }
  }
  const BigInt g = gcd(gcd(boost::multiprecision::abs(a), boost::multiprecision::abs(b)), c);
  if (g > 1) {
    a /= g;
    b /= g;
    c /= g;
  }
  RealValue v;
  v.kind_ = RealKind::surd;
  v.a_ = std::move(a);
  v.b_ = std::move(b);
  v.d_ = std::move(d);
  v.c_ = std::move(c);
  return v;
}

inline RealValue RealValue::make_decimal(std::string digits, unsigned precision) {
  if (precision < 8)
    throw DomainError("decimal precision must be at least 8 significant digits");
  std::string_view s = digits;
  const auto dot = s.find('.');
  const std::string_view ip = dot == std::string_view::npos ? s : s.substr(0, dot);
  const std::string_view fp = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (ip.empty() && fp.empty()) throw ParseError("empty decimal literal");
  if ((!ip.empty() && !detail::all_digits(ip)) || (!fp.empty() && !detail::all_digits(fp)) ||
      fp.find('.') != std::string_view::npos)
    throw ParseError("malformed decimal literal '" + digits + "'");

  BigInt scaled = ip.empty() ? BigInt(0) : BigInt(std::string(ip));
  for (char ch : fp) scaled = scaled * 10 + (ch - '0');
  if (scaled == 0) throw DomainError("decimal value must be nonzero");
  const Rational center(scaled, pow10(static_cast<unsigned>(fp.size())));

  // exponent of the first significant digit
  long exp10 = 0;
  bool found = false;
  for (std::size_t i = 0; i < ip.size(); ++i) {
    if (ip[i] != '0') {
      exp10 = static_cast<long>(ip.size() - 1 - i);
      found = true;
      break;
    }
  }
  if (!found) {
    for (std::size_t j = 0; j < fp.size(); ++j) {
      if (fp[j] != '0') {
        exp10 = -static_cast<long>(j + 1);
        break;
      }
    }
  }
  const long t = exp10 - static_cast<long>(precision) + 1;
  const Rational radius = t >= 0 ? Rational(pow10(static_cast<unsigned>(t)), 2)
                                 : Rational(1, 2 * pow10(static_cast<unsigned>(-t)));

  RealValue v;
  v.kind_ = RealKind::decimal;
  v.rat_ = center;
  v.radius_ = radius;
  v.digits_ = std::move(digits);
  v.precision_ = precision;
  return v;
}

inline RealValue RealValue::parse(std::string_view text) {
  const std::string_view s = detail::trim(text);
  if (s.empty()) throw ParseError("empty real literal");

  if (s.front() == '(') {
    // (a+b*sqrt(d))/c  with the sign of b carried by the separator
    std::size_t pos = 1;
    const auto take_until = [&](char stop) -> std::string_view {
      const auto end = s.find(stop, pos);
      if (end == std::string_view::npos)
        throw ParseError("malformed surd literal '" + std::string(text) + "'");
      auto part = s.substr(pos, end - pos);
      pos = end;
      return part;
    };
    std::size_t sep = s.find_first_of("+-", s[1] == '-' ? 2 : 1);
    if (sep == std::string_view::npos || sep <= pos)
      throw ParseError("malformed surd literal '" + std::string(text) + "'");
    const std::string_view a_part = s.substr(pos, sep - pos);
    BigInt a = a_part.front() == '-' ? -detail::parse_big(a_part.substr(1))
                                     : detail::parse_big(a_part);
    const bool b_neg = s[sep] == '-';
    pos = sep + 1;
    const std::string_view b_part = take_until('*');
    BigInt b = detail::parse_big(b_part);
    if (b_neg) b = -b;
    if (s.substr(pos, 6) != "*sqrt(")
      throw ParseError("malformed surd literal '" + std::string(text) + "'");
    pos += 6;
    const std::string_view d_part = take_until(')');
    const BigInt d = detail::parse_big(d_part);
    if (s.substr(pos, 3) != "))/")
      throw ParseError("malformed surd literal '" + std::string(text) + "'");
    pos += 3;
    const BigInt c = detail::parse_big(s.substr(pos));
    return make_surd(std::move(a), std::move(b), d, c);
  }

  if (const auto tilde = s.find('~'); tilde != std::string_view::npos) {
    const std::string_view digit_part = s.substr(0, tilde);
    const std::string_view prec_part = s.substr(tilde + 1);
    if (!detail::all_digits(prec_part) || prec_part.size() > 6)
      throw ParseError("malformed precision suffix '" + std::string(text) + "'");
    const unsigned long prec = std::stoul(std::string(prec_part));
    return make_decimal(std::string(digit_part), static_cast<unsigned>(prec));
  }

  return from_rational(Rational::parse(s));
}

inline RealValue RealValue::reciprocal() const {
  switch (kind_) {
    case RealKind::rational:
      return from_rational(rat_.reciprocal());
    case RealKind::surd: {
      // c/(a+b sqrt(d)) = c(a - b sqrt(d)) / (a^2 - b^2 d)
      const BigInt e = a_ * a_ - b_ * b_ * d_;
      if (e == 0) throw DomainError("reciprocal of zero");
      return make_surd(c_ * a_, -(c_ * b_), d_, e);
    }
    case RealKind::decimal:
      throw DomainError("reciprocal of a decimal is not representable; supply an exact value");
  }
  throw DomainError("unreachable");
}

inline std::string RealValue::to_string() const {
  switch (kind_) {
    case RealKind::rational:
      return rat_.to_string();
    case RealKind::surd: {
      const std::string sep = b_ < 0 ? "-" : "+";
      const BigInt babs = boost::multiprecision::abs(b_);
      return "(" + a_.str() + sep + babs.str() + "*sqrt(" + d_.str() + "))/" + c_.str();
    }
    case RealKind::decimal:
      return digits_ + "~" + std::to_string(precision_);
  }
  return {};
}

// ---------------------------------------------------------------------------
// affine evaluations g(n) = floor(alpha n + gamma), h(n), f(n)

inline BigInt floor_affine(const RealValue& alpha, const RealValue& gamma, std::uint64_t n) {
  if (n == 0) throw DomainError("floor_affine: n must be >= 1");
  detail::require_alpha(alpha);
  detail::require_gamma(gamma);
  if (alpha.kind() == RealKind::rational && gamma.kind() == RealKind::rational)
    return detail::floor_affine_rational(alpha.as_rational(), gamma.as_rational(), n);
  detail::AffineForm form = detail::AffineForm::of(alpha);
  form.scale_by(BigInt(n));
  form.add(detail::AffineForm::of(gamma));
  return detail::certified_floor(form);
}

// Nearest integer to alpha*n; exact halves round up.
inline BigInt nearest_affine(const RealValue& alpha, std::uint64_t n) {
  if (n == 0) throw DomainError("nearest_affine: n must be >= 1");
  detail::require_alpha(alpha);
  if (alpha.kind() == RealKind::rational)
    return detail::floor_affine_rational(alpha.as_rational(), Rational(1, 2), n);
  detail::AffineForm form = detail::AffineForm::of(alpha);
  form.scale_by(BigInt(n));
  form.base += Rational(1, 2);
  return detail::certified_floor(form);
}

// Signed fractional residue in [-1/2, 1/2); lo == hi for exact inputs.
struct CircleValue {
  Rational lo, hi;
  bool exact() const { return lo == hi; }
  const Rational& value() const {
    if (!exact()) throw DomainError("CircleValue: interval-valued, not exact");
    return lo;
  }
};

// Reduce any rational into the representative interval [-1/2, 1/2).
inline Rational reduce_mod1(const Rational& r) {
  const BigInt k = (r + Rational(1, 2)).floor();
  return r - Rational(k);
}

inline CircleValue signed_frac(const RealValue& alpha, std::uint64_t n) {
  if (n == 0) throw DomainError("signed_frac: n must be >= 1");
  detail::require_alpha(alpha);
  detail::AffineForm form = detail::AffineForm::of(alpha);
  form.scale_by(BigInt(n));
  detail::AffineForm hform = form;
  hform.base += Rational(1, 2);
  const BigInt h = detail::certified_floor(hform);
  form.base -= Rational(h);
  if (form.exact_rational()) return {form.base, form.base};
  const unsigned k = form.radius.is_zero() ? 60u : detail::digits_below(form.radius);
  RationalInterval iv = form.enclosure(k);
  const Rational half(1, 2);
  if (iv.lo < -half) iv.lo = -half;
  if (iv.hi > half) iv.hi = half;
  return {iv.lo, iv.hi};
}

// Certified sign of |f_alpha(n)| - threshold; exact for rational and surd
// alpha, interval-certified for decimals.
inline int signed_frac_abs_compare(const RealValue& alpha, std::uint64_t n,
                                   const Rational& threshold) {
  if (n == 0) throw DomainError("signed_frac_abs_compare: n must be >= 1");
  detail::require_alpha(alpha);
  detail::AffineForm form = detail::AffineForm::of(alpha);
  form.scale_by(BigInt(n));
  detail::AffineForm hform = form;
  hform.base += Rational(1, 2);
  const BigInt h = detail::certified_floor(hform);
  form.base -= Rational(h);
  const int c1 = detail::certified_compare(form, threshold);
  if (c1 >= 0) return c1;  // f >= t >= 0, so |f| >= t
  const int c2 = detail::certified_compare(form, -threshold);
  if (c2 < 0) return 1;  // f < -t
  if (c2 == 0) return 0;
  return -1;  // -t < f < t
}

// Least r in N with r * value > 1, for value > 0. This is floor(1/value)+1
// whether or not 1/value is an integer.
inline BigInt least_r_with_product_above_one(const RealValue& value) {
  detail::require_alpha(value);
  if (value.is_exact())
    return detail::certified_floor(detail::AffineForm::of(value.reciprocal())) + 1;
  const RationalInterval iv = value.enclosure(detail::digits_below(value.decimal_radius()));
  const BigInt lo = iv.hi.reciprocal().floor();
  const BigInt hi = iv.lo.reciprocal().floor();
  if (lo == hi) return lo + 1;
  throw PrecisionExhausted("declared decimal digits cannot pin floor(1/alpha)");
}

// Least integer strictly greater than the value.
inline BigInt least_integer_above(const RealValue& value) {
  return detail::certified_floor(detail::AffineForm::of(value)) + 1;
}

}  // namespace beatty
