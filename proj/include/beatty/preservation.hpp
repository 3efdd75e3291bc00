#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "beatty/csv.hpp"
#include "beatty/errors.hpp"
#include "beatty/integer_set.hpp"
#include "beatty/largeness.hpp"
#include "beatty/rational.hpp"
#include "beatty/real.hpp"
#include "beatty/spectrum.hpp"

namespace beatty {

// ---------------------------------------------------------------------------
// enumeration-index partition making the spectrum map strictly increasing

struct PartitionCertificate {
  std::uint64_t r = 0;                   // least r with r * alpha > 1
  std::vector<IntegerSet> classes;       // class i holds elements with index i (mod r)
  std::size_t chosen_index = 0;          // 0-based; argmax of the class harmonic sums
  std::vector<FractionSum> class_harmonic;
  std::vector<bool> injective;           // per class, when gamma was supplied

  const IntegerSet& chosen_class() const { return classes[chosen_index]; }
};

namespace detail {

inline bool strictly_increasing_image(const SpectrumParams& params, const IntegerSet& set) {
  std::uint64_t prev = 0;
  bool first = true;
  for (const std::uint64_t n : set.elements()) {
    const std::uint64_t v = params.apply(n);
    if (!first && v <= prev) return false;
    prev = v;
    first = false;
  }
  return true;
}

}  // namespace detail

// Split the set by enumeration-index residue into r = least {r : r*alpha > 1}
// classes; consecutive elements of one class then differ by at least r, so
// the spectrum map is strictly increasing on each class. The chosen class
// maximizes the partial harmonic sum (ties to the least index).
inline PartitionCertificate injective_partition(const RealValue& alpha, const IntegerSet& set,
                                                const std::optional<RealValue>& gamma = {}) {
  if (set.empty()) throw DomainError("injective_partition: set is empty");
  const BigInt r_big = least_r_with_product_above_one(alpha);
  if (r_big > BigInt(1) << 32)
    throw SizeError("injective_partition: alpha is too small, r exceeds 2^32");
  const auto r = static_cast<std::uint64_t>(r_big);  // classes beyond |A| stay empty

  PartitionCertificate cert;
  cert.r = r;
  const auto& e = set.elements();
  for (std::uint64_t i = 0; i < r; ++i) {
    std::vector<std::uint64_t> cls;
    for (std::size_t j = i; j < e.size(); j += r) cls.push_back(e[j]);
    cert.classes.emplace_back(std::move(cls), set.universe_bound());
  }
  for (const IntegerSet& cls : cert.classes) cert.class_harmonic.push_back(harmonic_accumulate(cls));
  std::size_t best = 0;
  for (std::size_t i = 1; i < cert.classes.size(); ++i) {
    if (cert.class_harmonic[i].compare(cert.class_harmonic[best]) > 0) best = i;
  }
  cert.chosen_index = best;

  if (gamma) {
    const SpectrumParams params(alpha, *gamma);
    cert.injective.reserve(cert.classes.size());
    for (const IntegerSet& cls : cert.classes)
      cert.injective.push_back(detail::strictly_increasing_image(params, cls));
  }
  return cert;
}

// ---------------------------------------------------------------------------
// harmonic comparison sum 1/(n*alpha + 1) <= sum 1/floor(n*alpha + gamma)

struct HsdInequalityCheck {
  FractionSum lhs_lo, lhs_hi;  // coincide when alpha is rational
  FractionSum rhs;
  bool lhs_exact = false;
  bool holds = false;
};

inline HsdInequalityCheck hsd_inequality_check(const SpectrumParams& params,
                                               const IntegerSet& class_set) {
  HsdInequalityCheck check;
  for (const std::uint64_t n : class_set.elements()) {
    const std::uint64_t v = params.apply(n);
    if (v == 0)
      throw RangeError("hsd_inequality_check: alpha*n + gamma < 1 at n = " + std::to_string(n));
    check.rhs.add_reciprocal(BigInt(v));
  }

  const RealValue& alpha = params.alpha();
  if (alpha.kind() == RealKind::rational) {
    const Rational& a = alpha.as_rational();
    FractionSum lhs;
    for (const std::uint64_t n : class_set.elements()) {
      // 1/(n p/q + 1) = q/(n p + q)
      lhs.add(a.den(), BigInt(n) * a.num() + a.den());
    }
    check.lhs_lo = lhs;
    check.lhs_hi = std::move(lhs);
    check.lhs_exact = true;
    check.holds = check.lhs_hi.compare(check.rhs) <= 0;
    return check;
  }

  for (unsigned digits = 60;; digits *= 2) {
    const RationalInterval iv = alpha.enclosure(digits);
    if (!(iv.lo > Rational(0)))
      throw PrecisionExhausted("hsd_inequality_check: cannot certify alpha > 0");
    FractionSum lo_sum, hi_sum;
    for (const std::uint64_t n : class_set.elements()) {
      const Rational nr{BigInt(n)};
      const Rational hi_den = nr * iv.hi + Rational(1);
      const Rational lo_den = nr * iv.lo + Rational(1);
      lo_sum.add(hi_den.den(), hi_den.num());  // 1/(n*hi + 1)
      hi_sum.add(lo_den.den(), lo_den.num());  // 1/(n*lo + 1)
    }
    check.lhs_lo = lo_sum;
    check.lhs_hi = hi_sum;
    if (check.lhs_hi.compare(check.rhs) <= 0) {
      check.holds = true;
      return check;
    }
    if (check.lhs_lo.compare(check.rhs) > 0) {
      check.holds = false;
      return check;
    }
    if (alpha.kind() == RealKind::decimal || digits >= detail::kRefineMaxDigits)
      throw PrecisionExhausted("hsd_inequality_check: enclosure cannot decide the inequality");
  }
}

// ---------------------------------------------------------------------------
// density transfer (case split at alpha = 1)

struct DensityComparison {
  int case_tag = 1;     // 1: alpha <= 1, 2: alpha > 1
  std::uint64_t r = 0;  // least integer > alpha, case 2 only
  Rational beta;        // least sampled prefix density of the class
  struct Sample {
    std::uint64_t n = 0;
    std::uint64_t image_cut = 0;  // floor(n*alpha + gamma), case 2 only
    Rational lhs, rhs;
    bool holds = false;
  };
  std::vector<Sample> samples;
  bool holds = false;
};

inline DensityComparison density_transfer_check(const SpectrumParams& params,
                                                const IntegerSet& injective_class,
                                                std::span<const std::uint64_t> sample_points) {
  if (injective_class.empty()) throw DomainError("density_transfer_check: class is empty");
  if (!detail::strictly_increasing_image(params, injective_class))
    throw ContractViolation(
        "density_transfer_check: spectrum map is not strictly increasing on the class; "
        "partition first");
  for (const std::uint64_t n : sample_points) {
    if (n == 0 || n > injective_class.universe_bound())
      throw DomainError("density_transfer_check: sample outside [1, universe_bound]");
  }

  const IntegerSet image = spectrum_image(params, injective_class);
  DensityComparison cmp;
  const int alpha_vs_one = params.alpha().compare(Rational(1));
  cmp.case_tag = alpha_vs_one <= 0 ? 1 : 2;
  if (cmp.case_tag == 2) cmp.r = static_cast<std::uint64_t>(least_integer_above(params.alpha()));

  bool first = true;
  cmp.holds = true;
  for (const std::uint64_t n : sample_points) {
    DensityComparison::Sample s;
    s.n = n;
    const std::uint64_t class_count = injective_class.count_leq(n);
    if (cmp.case_tag == 1) {
      s.lhs = Rational(BigInt(class_count));
      s.rhs = Rational(BigInt(image.count_leq(n)));
      s.holds = s.lhs <= s.rhs;
    } else {
      s.image_cut = params.apply(n);
      s.lhs = Rational(BigInt(image.count_leq(s.image_cut)), BigInt(s.image_cut));
      s.rhs = Rational(BigInt(class_count), BigInt(n) * BigInt(cmp.r));
      s.holds = s.lhs >= s.rhs;
    }
    cmp.holds = cmp.holds && s.holds;
    const Rational density{BigInt(class_count), BigInt(n)};
    if (first || density < cmp.beta) {
      cmp.beta = density;
      first = false;
    }
    cmp.samples.push_back(std::move(s));
  }
  return cmp;
}

// ---------------------------------------------------------------------------
// gap transfer: image gaps obey g(a') - g(a) <= alpha (a' - a) + 1

struct GapTransferCheck {
  std::uint64_t input_max_gap = 0;
  std::uint64_t image_max_gap = 0;
  Rational bound_upper;  // rational upper enclosure of alpha*input_max_gap + 1
  bool bound_exact = false;
  bool holds = false;
};

inline GapTransferCheck gap_transfer_check(const SpectrumParams& params, const IntegerSet& set) {
  if (set.size() < 2) throw SizeError("gap_transfer_check: need at least two elements");
  GapTransferCheck check;
  const auto& e = set.elements();
  for (std::size_t i = 1; i < e.size(); ++i)
    check.input_max_gap = std::max(check.input_max_gap, e[i] - e[i - 1]);

  const IntegerSet image = spectrum_image(params, set);
  const auto& img = image.elements();
  for (std::size_t i = 1; i < img.size(); ++i)
    check.image_max_gap = std::max(check.image_max_gap, img[i] - img[i - 1]);

  detail::AffineForm scaled = detail::AffineForm::of(params.alpha());
  scaled.scale_by(BigInt(check.input_max_gap));
  // integer comparison: gap <= alpha*delta + 1  <=>  gap <= floor(alpha*delta) + 1
  const BigInt floor_bound = detail::certified_floor(scaled) + 1;
  check.holds = BigInt(check.image_max_gap) <= floor_bound;
  if (params.alpha().kind() == RealKind::rational) {
    check.bound_upper = params.alpha().as_rational() * Rational(BigInt(check.input_max_gap)) + Rational(1);
    check.bound_exact = true;
  } else {
    check.bound_upper = scaled.enclosure(40).hi + Rational(1);
  }
  return check;
}

// ---------------------------------------------------------------------------
// side-by-side suite

struct PreservationSuite {
  std::vector<ReportRow> rows;
  bool theorems_hold = false;
};

namespace detail {

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline std::string joined(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(v[i]);
  }
  return out;
}

inline void push_rational(std::vector<ReportRow>& rows, const std::string& family,
                          const std::string& side, const std::string& field, const Rational& v,
                          const std::string& params) {
  rows.push_back({family, side, field, v.to_string(), v.decimal(12), params});
}

inline void push_int(std::vector<ReportRow>& rows, const std::string& family,
                     const std::string& side, const std::string& field, std::uint64_t v,
                     const std::string& params) {
  rows.push_back({family, side, field, std::to_string(v), "", params});
}

inline void push_text(std::vector<ReportRow>& rows, const std::string& family,
                      const std::string& side, const std::string& field, std::string v,
                      const std::string& params) {
  rows.push_back({family, side, field, std::move(v), "", params});
}

}  // namespace detail

// Rows for one side of a largeness report.
inline void append_report_rows(std::vector<ReportRow>& rows, const LargenessReport& rep,
                               const std::string& side, const std::string& params) {
  using detail::push_int;
  using detail::push_rational;
  using detail::push_text;
  push_int(rows, "set", side, "cardinality", rep.fingerprint.cardinality, params);
  push_int(rows, "set", side, "min", rep.fingerprint.min_element, params);
  push_int(rows, "set", side, "max", rep.fingerprint.max_element, params);
  push_int(rows, "set", side, "universe_bound", rep.fingerprint.universe_bound, params);
  for (const Family f : rep.families) {
    if (f == Family::infinite_card)
      push_int(rows, "if", side, "cardinality", rep.fingerprint.cardinality, params);
  }
  if (rep.ap) {
    push_int(rows, "ap", side, "length", rep.ap->length, params);
    push_int(rows, "ap", side, "start", rep.ap->start, params);
    push_int(rows, "ap", side, "difference", rep.ap->difference, params);
  }
  if (rep.gaps) {
    push_int(rows, "ps", side, "max_gap", rep.gaps->max_gap, params);
    for (const auto& [b, span] : rep.gaps->spans)
      push_int(rows, "ps", side, "span_b=" + std::to_string(b), span, params);
  }
  if (rep.density) {
    push_rational(rows, "puad", side, "prefix_max", rep.density->prefix_max, params);
    push_text(rows, "puad", side, "prefix_argmax", detail::joined(rep.density->prefix_argmax),
              params);
    push_int(rows, "puad", side, "prefix_argmax_count", rep.density->prefix_argmax_count, params);
    push_rational(rows, "pubd", side, "banach_window_max", rep.density->banach_window_max, params);
    push_text(rows, "pubd", side, "banach_argmax", detail::joined(rep.density->banach_argmax),
              params);
    push_int(rows, "pubd", side, "banach_argmax_count", rep.density->banach_argmax_count, params);
    push_int(rows, "pubd", side, "window", rep.density->window, params);
  }
  if (rep.harmonic)
    push_rational(rows, "hsd", side, "harmonic_sum", *rep.harmonic, params);
}

// Certificates for the set and its spectrum image side by side, plus the
// partition / inequality / density / gap checks. Any failed check is a bug
// in this library, not a property of the input.
inline PreservationSuite run_preservation_suite(const SpectrumParams& params,
                                                const IntegerSet& set,
                                                const std::vector<Family>& families,
                                                std::uint64_t window) {
  using detail::push_int;
  using detail::push_rational;
  using detail::push_text;

  const std::string base_params = "alpha=" + params.alpha().to_string() +
                                  ";gamma=" + params.gamma().to_string() +
                                  ";window=" + std::to_string(window);

  PreservationSuite suite;
  auto& rows = suite.rows;

  const LargenessReport input_rep = analyze_set(set, families, window);
  append_report_rows(rows, input_rep, "input", base_params);

  const IntegerSet image = spectrum_image(params, set);
  const std::uint64_t image_window = std::min<std::uint64_t>(window, image.universe_bound());
  const LargenessReport image_rep = analyze_set(image, families, image_window);
  append_report_rows(rows, image_rep, "image",
                     base_params + ";image_window=" + std::to_string(image_window));

  const PartitionCertificate part = injective_partition(params.alpha(), set, params.gamma());
  bool injective_all = true;
  for (const bool b : part.injective) injective_all = injective_all && b;
  push_int(rows, "partition", "check", "r", part.r, base_params);
  push_int(rows, "partition", "check", "class_count", part.classes.size(), base_params);
  push_int(rows, "partition", "check", "chosen_class", part.chosen_index + 1, base_params);
  push_int(rows, "partition", "check", "chosen_class_size", part.chosen_class().size(),
           base_params);
  push_rational(rows, "partition", "check", "chosen_harmonic",
                part.class_harmonic[part.chosen_index].to_rational(), base_params);
  push_text(rows, "partition", "check", "injective_all", detail::bool_str(injective_all),
            base_params);

  const HsdInequalityCheck hsd = hsd_inequality_check(params, part.chosen_class());
  push_rational(rows, "hsd_inequality", "check", "lhs_lower", hsd.lhs_lo.to_rational(),
                base_params);
  push_rational(rows, "hsd_inequality", "check", "lhs_upper", hsd.lhs_hi.to_rational(),
                base_params);
  push_rational(rows, "hsd_inequality", "check", "rhs", hsd.rhs.to_rational(), base_params);
  push_text(rows, "hsd_inequality", "check", "lhs_exact", detail::bool_str(hsd.lhs_exact),
            base_params);
  push_text(rows, "hsd_inequality", "check", "holds", detail::bool_str(hsd.holds), base_params);

  const std::uint64_t class_window =
      std::min<std::uint64_t>(window, part.chosen_class().universe_bound());
  const DensityReport class_density = density_report(part.chosen_class(), class_window);
  const DensityComparison density =
      density_transfer_check(params, part.chosen_class(), class_density.prefix_argmax);
  push_text(rows, "density_transfer", "check", "case", density.case_tag == 1 ? "I" : "II",
            base_params);
  push_int(rows, "density_transfer", "check", "r", density.r, base_params);
  push_rational(rows, "density_transfer", "check", "beta", density.beta, base_params);
  push_int(rows, "density_transfer", "check", "sample_count", density.samples.size(), base_params);
  for (std::size_t i = 0; i < density.samples.size(); ++i) {
    const auto& s = density.samples[i];
    std::string v = "n=" + std::to_string(s.n) + ";lhs=" + s.lhs.to_string() +
                    ";rhs=" + s.rhs.to_string() + ";holds=" + detail::bool_str(s.holds);
    push_text(rows, "density_transfer", "check", "sample_" + std::to_string(i + 1), std::move(v),
              base_params);
  }
  push_text(rows, "density_transfer", "check", "holds", detail::bool_str(density.holds),
            base_params);

  const GapTransferCheck gap = gap_transfer_check(params, set);
  push_int(rows, "gap_transfer", "check", "input_max_gap", gap.input_max_gap, base_params);
  push_int(rows, "gap_transfer", "check", "image_max_gap", gap.image_max_gap, base_params);
  push_rational(rows, "gap_transfer", "check", "bound_upper", gap.bound_upper, base_params);
  push_text(rows, "gap_transfer", "check", "holds", detail::bool_str(gap.holds), base_params);

  suite.theorems_hold =
      injective_all && part.injective[part.chosen_index] && hsd.holds && density.holds && gap.holds;
  return suite;
}

}  // namespace beatty
