#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "beatty/errors.hpp"
#include "beatty/integer_set.hpp"
#include "beatty/rational.hpp"

namespace beatty {

// ---------------------------------------------------------------------------
// arithmetic progressions

struct ApCertificate {
  std::uint64_t length = 0;
  std::uint64_t start = 0;
  std::uint64_t difference = 0;

  friend bool operator==(const ApCertificate&, const ApCertificate&) = default;
};

namespace detail {

class Membership {
 public:
  explicit Membership(const IntegerSet& set) : set_(set) {
    const std::uint64_t m = set.empty() ? 0 : set.max();
    if (m <= (1u << 26)) {
      bits_.assign(m / 64 + 1, 0);
      for (const std::uint64_t e : set.elements()) bits_[e >> 6] |= 1ull << (e & 63);
      max_ = m;
      use_bits_ = true;
    }
  }

  bool operator()(std::uint64_t v) const {
    if (use_bits_) return v <= max_ && (bits_[v >> 6] >> (v & 63)) & 1;
    return set_.contains(v);
  }

 private:
  const IntegerSet& set_;
  std::vector<std::uint64_t> bits_;
  std::uint64_t max_ = 0;
  bool use_bits_ = false;
};

}  // namespace detail

// Longest arithmetic progression inside the set. Ties resolve to the smallest
// start, then the smallest difference. Singletons report (1, x, 0).
inline ApCertificate longest_ap(const IntegerSet& set) {
  const auto& e = set.elements();
  const std::size_t n = e.size();
  if (n == 0) return {0, 0, 0};
  if (n == 1) return {1, e[0], 0};
  const std::uint64_t m = e.back();
  const detail::Membership member(set);

  ApCertificate best{2, e[0], e[1] - e[0]};
  std::uint64_t best_len = 2;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::uint64_t a = e[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::uint64_t d = e[j] - a;
      // a longer progression needs a + best_len*d <= max
      if (static_cast<unsigned __int128>(best_len) * d + a > m) break;
      if (a > d && member(a - d)) continue;  // extends backwards; counted from its true start
      std::uint64_t len = 2;
      std::uint64_t next = e[j] + d;
      while (next <= m && member(next)) {
        ++len;
        next += d;
      }
      if (len > best_len) {
        best_len = len;
        best = {len, a, d};
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// gap profile (piecewise-syndeticity surrogate)

struct GapCertificate {
  std::uint64_t max_gap = 0;
  // (gap bound b, maximal span of a run whose consecutive gaps are all <= b)
  std::vector<std::pair<std::uint64_t, std::uint64_t>> spans;
};

namespace detail {

inline std::uint64_t max_span_for_bound(const std::vector<std::uint64_t>& e, std::uint64_t b) {
  std::uint64_t best = 0;
  std::uint64_t run_start = e.front();
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i] - e[i - 1] > b) {
      best = std::max(best, e[i - 1] - run_start);
      run_start = e[i];
    }
  }
  return std::max(best, e.back() - run_start);
}

}  // namespace detail

inline GapCertificate gap_certificate(const IntegerSet& set, std::vector<std::uint64_t> gap_bounds) {
  if (set.size() < 2) throw SizeError("gap_certificate: need at least two elements");
  const auto& e = set.elements();
  std::uint64_t max_gap = 0;
  for (std::size_t i = 1; i < e.size(); ++i) max_gap = std::max(max_gap, e[i] - e[i - 1]);

  std::sort(gap_bounds.begin(), gap_bounds.end());
  gap_bounds.erase(std::unique(gap_bounds.begin(), gap_bounds.end()), gap_bounds.end());
  GapCertificate cert;
  cert.max_gap = max_gap;
  cert.spans.reserve(gap_bounds.size());
  for (const std::uint64_t b : gap_bounds) {
    if (b == 0) throw DomainError("gap_certificate: gap bounds must be positive");
    cert.spans.emplace_back(b, detail::max_span_for_bound(e, b));
  }
  return cert;
}

// Powers of two up to max_gap, with max_gap itself appended so the profile
// always ends in the whole-range span.
inline std::vector<std::uint64_t> default_gap_bounds(std::uint64_t max_gap) {
  std::vector<std::uint64_t> bounds;
  for (std::uint64_t b = 1; b <= max_gap && b != 0; b <<= 1) bounds.push_back(b);
  if (bounds.empty() || bounds.back() != max_gap) bounds.push_back(max_gap);
  return bounds;
}

// ---------------------------------------------------------------------------
// densities

struct DensityReport {
  Rational prefix_max;
  std::vector<std::uint64_t> prefix_argmax;  // first maximizing prefixes, capped
  std::uint64_t prefix_argmax_count = 0;
  Rational banach_window_max;
  std::vector<std::uint64_t> banach_argmax;  // first maximizing window starts, capped
  std::uint64_t banach_argmax_count = 0;
  std::uint64_t window = 0;
};

namespace detail {

constexpr std::size_t kArgmaxCap = 16;

// -1/0/+1 for a/b vs c/d with all operands < 2^64 and b, d > 0
inline int frac_compare(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  const unsigned __int128 x = static_cast<unsigned __int128>(a) * d;
  const unsigned __int128 y = static_cast<unsigned __int128>(c) * b;
  return x < y ? -1 : (x > y ? 1 : 0);
}

}  // namespace detail

// Exact maxima of the prefix occupation ratio |A ∩ [1,n]|/n over n <= N and
// of the sliding-window ratio |A ∩ [m+1, m+w]|/w over windows inside [1, N].
inline DensityReport density_report(const IntegerSet& set, std::uint64_t window) {
  const std::uint64_t universe = set.universe_bound();
  if (window == 0 || window > universe)
    throw DomainError("density_report: window must lie in [1, universe_bound]");

  DensityReport rep;
  rep.window = window;

  std::uint64_t best_c = 0, best_n = 1;
  std::size_t idx = 0;
  const auto& e = set.elements();
  for (std::uint64_t n = 1; n <= universe; ++n) {
    if (idx < e.size() && e[idx] == n) ++idx;
    const auto c = static_cast<std::uint64_t>(idx);
    const int cmp = detail::frac_compare(c, n, best_c, best_n);
    if (cmp > 0) {
      best_c = c;
      best_n = n;
      rep.prefix_argmax.clear();
      rep.prefix_argmax.push_back(n);
      rep.prefix_argmax_count = 1;
    } else if (cmp == 0) {
      if (rep.prefix_argmax.size() < detail::kArgmaxCap) rep.prefix_argmax.push_back(n);
      ++rep.prefix_argmax_count;
    }
  }
  rep.prefix_max = Rational(BigInt(best_c), BigInt(best_n));

  std::uint64_t best_w = 0;
  std::size_t lo = 0, hi = 0;  // elements in [start, start + window - 1]
  for (std::uint64_t start = 1; start + window - 1 <= universe; ++start) {
    while (hi < e.size() && e[hi] <= start + window - 1) ++hi;
    while (lo < e.size() && e[lo] < start) ++lo;
    const auto c = static_cast<std::uint64_t>(hi - lo);
    if (c > best_w) {
      best_w = c;
      rep.banach_argmax.clear();
      rep.banach_argmax.push_back(start);
      rep.banach_argmax_count = 1;
    } else if (c == best_w) {
      if (rep.banach_argmax.size() < detail::kArgmaxCap) rep.banach_argmax.push_back(start);
      ++rep.banach_argmax_count;
    }
  }
  rep.banach_window_max = Rational(BigInt(best_w), BigInt(window));
  return rep;
}

inline Rational prefix_max_density(const IntegerSet& set) {
  if (set.universe_bound() == 0) return Rational(0);
  return density_report(set, 1).prefix_max;
}

inline Rational banach_window_max(const IntegerSet& set, std::uint64_t window) {
  return density_report(set, window).banach_window_max;
}

// ---------------------------------------------------------------------------
// harmonic sums

inline FractionSum harmonic_accumulate(const IntegerSet& set) {
  FractionSum sum;
  for (const std::uint64_t e : set.elements()) sum.add_reciprocal(BigInt(e));
  return sum;
}

// Exact partial harmonic sum in lowest terms.
inline Rational harmonic_partial_sum(const IntegerSet& set) {
  return harmonic_accumulate(set).to_rational();
}

// ---------------------------------------------------------------------------
// finite-sums containment (IP certificate)

struct FsSubsetCheck {
  bool holds = true;
  std::vector<std::size_t> violator;  // 1-based indices, lexicographically least
};

inline FsSubsetCheck verify_fs_subset(const GeneratorSequence& gen, const IntegerSet& set) {
  if (gen.terms.size() > 24) throw SizeError("verify_fs_subset: more than 24 generators");
  detail::checked_generator_total(gen);
  std::vector<std::size_t> prefix;
  FsSubsetCheck result;
  const std::function<bool(std::size_t, std::uint64_t)> descend =
      [&](std::size_t from, std::uint64_t sum) -> bool {
    for (std::size_t i = from; i < gen.terms.size(); ++i) {
      const std::uint64_t s = sum + gen.terms[i];
      prefix.push_back(i + 1);
      if (!set.contains(s)) {
        result.holds = false;
        result.violator = prefix;
        return false;
      }
      if (!descend(i + 1, s)) return false;
      prefix.pop_back();
    }
    return true;
  };
  descend(0, 0);
  return result;
}

// ---------------------------------------------------------------------------
// J-set witnesses

struct JWitness {
  std::uint64_t shift = 0;               // the common a
  std::vector<std::size_t> indices;      // H, 1-based into [1..M]
  std::vector<std::uint64_t> sums;       // a + sum_{n in H} f(n), one per function
};

inline bool revalidate(const JWitness& w, const std::vector<std::vector<std::uint64_t>>& functions,
                       const IntegerSet& target) {
  if (w.sums.size() != functions.size() || w.indices.empty()) return false;
  for (std::size_t fi = 0; fi < functions.size(); ++fi) {
    std::uint64_t s = w.shift;
    for (const std::size_t idx : w.indices) {
      if (idx == 0 || idx > functions[fi].size()) return false;
      s += functions[fi][idx - 1];
    }
    if (s != w.sums[fi] || !target.contains(s)) return false;
  }
  return true;
}

// Exhaustive witness search with a deterministic order: smallest a drawn from
// the target set, then index sets in lexicographic order capped at
// h_size_bound. A missing result is a statement about the searched box only.
inline std::optional<JWitness> j_witness_search(
    const std::vector<std::vector<std::uint64_t>>& functions, const IntegerSet& target,
    std::uint64_t a_bound, std::size_t h_size_bound) {
  if (functions.empty()) throw DomainError("j_witness_search: need at least one function");
  const std::size_t m = functions.front().size();
  if (m == 0) throw DomainError("j_witness_search: functions must be nonempty sequences");
  if (m > 20) throw SizeError("j_witness_search: function domain capped at 20");
  for (const auto& f : functions) {
    if (f.size() != m) throw DomainError("j_witness_search: functions must share one domain");
    for (const std::uint64_t v : f)
      if (v > (1ull << 48)) throw DomainError("j_witness_search: function values too large");
  }
  if (h_size_bound == 0 || h_size_bound > m)
    throw DomainError("j_witness_search: h_size_bound must lie in [1, M]");
  if (a_bound == 0) throw DomainError("j_witness_search: a_bound must be positive");

  std::uint64_t subsets = 0;
  {
    std::uint64_t binom = 1;
    for (std::size_t s = 1; s <= h_size_bound; ++s) {
      binom = binom * (m - s + 1) / s;
      subsets += binom;
    }
  }
  const std::uint64_t candidates = target.count_leq(a_bound);
  if (static_cast<unsigned __int128>(candidates) * subsets > 1'000'000'000ull)
    throw SizeError("j_witness_search: search space exceeds 1e9 configurations");

  std::vector<std::size_t> h;
  std::vector<std::uint64_t> partial(functions.size(), 0);
  std::optional<JWitness> found;

  const std::function<bool(std::uint64_t, std::size_t)> descend =
      [&](std::uint64_t a, std::size_t from) -> bool {
    for (std::size_t i = from; i < m; ++i) {
      h.push_back(i + 1);
      for (std::size_t fi = 0; fi < functions.size(); ++fi) partial[fi] += functions[fi][i];
      bool all = true;
      for (std::size_t fi = 0; fi < functions.size(); ++fi) {
        if (!target.contains(a + partial[fi])) {
          all = false;
          break;
        }
      }
      if (all) {
        JWitness w;
        w.shift = a;
        w.indices = h;
        w.sums.reserve(functions.size());
        for (std::size_t fi = 0; fi < functions.size(); ++fi) w.sums.push_back(a + partial[fi]);
        found = std::move(w);
        return false;
      }
      if (h.size() < h_size_bound && !descend(a, i + 1)) return false;
      for (std::size_t fi = 0; fi < functions.size(); ++fi) partial[fi] -= functions[fi][i];
      h.pop_back();
    }
    return true;
  };

  for (const std::uint64_t a : target.elements()) {
    if (a > a_bound) break;
    if (!descend(a, 0)) break;
  }
  return found;
}

// ---------------------------------------------------------------------------
// family checks with thresholds

enum class Family { infinite_card, ap, ps, puad, pubd, hsd };

inline std::string_view family_tag(Family f) {
  switch (f) {
    case Family::infinite_card: return "if";
    case Family::ap: return "ap";
    case Family::ps: return "ps";
    case Family::puad: return "puad";
    case Family::pubd: return "pubd";
    case Family::hsd: return "hsd";
  }
  return "?";
}

inline Family parse_family(std::string_view tag) {
  if (tag == "if") return Family::infinite_card;
  if (tag == "ap") return Family::ap;
  if (tag == "ps") return Family::ps;
  if (tag == "puad") return Family::puad;
  if (tag == "pubd") return Family::pubd;
  if (tag == "hsd") return Family::hsd;
  throw ParseError("unknown family tag '" + std::string(tag) + "'");
}

inline std::vector<Family> parse_families(std::string_view list) {
  std::vector<Family> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const auto comma = list.find(',', pos);
    const auto piece = detail::trim(list.substr(pos, comma - pos));
    if (!piece.empty()) {
      const Family f = parse_family(piece);
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ParseError("empty family list");
  return out;
}

inline std::vector<Family> all_families() {
  return {Family::infinite_card, Family::ap, Family::ps, Family::puad, Family::pubd, Family::hsd};
}

// A threshold test against one family's finite certificate:
//   if:K      cardinality >= K
//   ap:L      longest progression >= L
//   hsd:R     harmonic partial sum >= R
//   puad:R    prefix density maximum >= R
//   ps:B:S    span at gap bound B >= S
//   pubd:W:R  window-W Banach maximum >= R
struct FamilyCheck {
  Family family = Family::infinite_card;
  Rational threshold;
  std::uint64_t param = 0;  // ps: gap bound; pubd: window

  static FamilyCheck parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
      const auto colon = text.find(':', pos);
      parts.push_back(text.substr(pos, colon - pos));
      if (colon == std::string_view::npos) break;
      pos = colon + 1;
    }
    if (parts.size() < 2) throw ParseError("family check needs a threshold, e.g. 'hsd:5/2'");
    FamilyCheck check;
    check.family = parse_family(parts[0]);
    const bool needs_param = check.family == Family::ps || check.family == Family::pubd;
    if (needs_param) {
      if (parts.size() != 3)
        throw ParseError("family check '" + std::string(parts[0]) + "' needs <param>:<threshold>");
      const Rational p = Rational::parse(parts[1]);
      if (!p.is_integer() || p <= Rational(0))
        throw ParseError("family check parameter must be a positive integer");
      check.param = static_cast<std::uint64_t>(p.num());
      check.threshold = Rational::parse(parts[2]);
    } else {
      if (parts.size() != 2)
        throw ParseError("family check '" + std::string(parts[0]) + "' takes a single threshold");
      check.threshold = Rational::parse(parts[1]);
    }
    return check;
  }

  bool passes(const IntegerSet& set) const {
    switch (family) {
      case Family::infinite_card:
        return Rational(BigInt(set.size())) >= threshold;
      case Family::ap:
        return Rational(BigInt(longest_ap(set).length)) >= threshold;
      case Family::hsd:
        return harmonic_accumulate(set).compare(threshold) >= 0;
      case Family::puad:
        return prefix_max_density(set) >= threshold;
      case Family::pubd: {
        if (param == 0 || param > set.universe_bound())
          throw DomainError("pubd check window must lie in [1, universe_bound]");
        return banach_window_max(set, param) >= threshold;
      }
      case Family::ps: {
        if (param == 0) throw DomainError("ps check needs a positive gap bound");
        if (set.size() < 2) return Rational(0) >= threshold;
        return Rational(BigInt(detail::max_span_for_bound(set.elements(), param))) >= threshold;
      }
    }
    return false;
  }

  std::string to_string() const {
    std::string out{family_tag(family)};
    if (family == Family::ps || family == Family::pubd)
      out += ":" + std::to_string(param);
    return out + ":" + threshold.to_string();
  }
};

// ---------------------------------------------------------------------------
// combined per-set report

struct SetFingerprint {
  std::uint64_t cardinality = 0;
  std::uint64_t min_element = 0;  // 0 when empty
  std::uint64_t max_element = 0;
  std::uint64_t universe_bound = 0;
};

struct LargenessReport {
  SetFingerprint fingerprint;
  std::vector<Family> families;
  std::uint64_t window = 0;
  std::optional<ApCertificate> ap;
  std::optional<GapCertificate> gaps;
  std::optional<DensityReport> density;
  std::optional<Rational> harmonic;
};

inline LargenessReport analyze_set(const IntegerSet& set, const std::vector<Family>& families,
                                   std::uint64_t window) {
  LargenessReport rep;
  rep.fingerprint = {set.size(), set.empty() ? 0 : set.min(), set.empty() ? 0 : set.max(),
                     set.universe_bound()};
  rep.families = families;
  rep.window = window;
  const auto wants = [&](Family f) {
    return std::find(families.begin(), families.end(), f) != families.end();
  };
  if (wants(Family::ap)) rep.ap = longest_ap(set);
  if (wants(Family::ps)) {
    if (set.size() < 2) throw SizeError("ps analysis needs at least two elements");
    std::uint64_t max_gap = 0;
    const auto& e = set.elements();
    for (std::size_t i = 1; i < e.size(); ++i) max_gap = std::max(max_gap, e[i] - e[i - 1]);
    rep.gaps = gap_certificate(set, default_gap_bounds(max_gap));
  }
  if (wants(Family::puad) || wants(Family::pubd)) rep.density = density_report(set, window);
  if (wants(Family::hsd)) rep.harmonic = harmonic_partial_sum(set);
  return rep;
}

}  // namespace beatty
