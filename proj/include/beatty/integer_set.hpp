#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "beatty/errors.hpp"
#include "beatty/rational.hpp"

namespace beatty {

// Finite set of positive integers, strictly increasing, bounded by a declared
// universe. Immutable after construction.
class IntegerSet {
 public:
  IntegerSet() = default;

  IntegerSet(std::vector<std::uint64_t> elements, std::uint64_t universe_bound)
      : elems_(std::move(elements)), bound_(universe_bound) {
    validate();
  }

  static IntegerSet from_unsorted(std::vector<std::uint64_t> v, std::uint64_t universe_bound) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return IntegerSet(std::move(v), universe_bound);
  }

  static IntegerSet with_inferred_bound(std::vector<std::uint64_t> sorted) {
    const std::uint64_t bound = sorted.empty() ? 0 : sorted.back();
    return IntegerSet(std::move(sorted), bound);
  }

  bool contains(std::uint64_t v) const {
    return std::binary_search(elems_.begin(), elems_.end(), v);
  }

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

  std::uint64_t min() const {
    if (empty()) throw DomainError("min of an empty set");
    return elems_.front();
  }

  std::uint64_t max() const {
    if (empty()) throw DomainError("max of an empty set");
    return elems_.back();
  }

  std::uint64_t universe_bound() const { return bound_; }
  const std::vector<std::uint64_t>& elements() const { return elems_; }

  // |A ∩ [1, v]|
  std::size_t count_leq(std::uint64_t v) const {
    return static_cast<std::size_t>(
        std::upper_bound(elems_.begin(), elems_.end(), v) - elems_.begin());
  }

  // |A ∩ [lo, hi]|
  std::size_t count_range(std::uint64_t lo, std::uint64_t hi) const {
    if (lo > hi) return 0;
    return count_leq(hi) - (lo == 0 ? 0 : count_leq(lo - 1));
  }

  IntegerSet truncated(std::uint64_t hi) const {
    std::vector<std::uint64_t> v(elems_.begin(),
                                 std::upper_bound(elems_.begin(), elems_.end(), hi));
    return IntegerSet(std::move(v), std::min(bound_, hi));
  }

  IntegerSet with_universe(std::uint64_t bound) const {
    return IntegerSet(elems_, bound);
  }

  bool is_subset_of(const IntegerSet& o) const {
    return std::includes(o.elems_.begin(), o.elems_.end(), elems_.begin(), elems_.end());
  }

  IntegerSet intersect(const IntegerSet& o) const {
    std::vector<std::uint64_t> out;
    std::set_intersection(elems_.begin(), elems_.end(), o.elems_.begin(), o.elems_.end(),
                          std::back_inserter(out));
    return IntegerSet(std::move(out), std::min(bound_, o.bound_));
  }

  friend bool operator==(const IntegerSet& a, const IntegerSet& b) {
    return a.bound_ == b.bound_ && a.elems_ == b.elems_;
  }

 private:
  void validate() const {
    std::uint64_t prev = 0;
    for (const std::uint64_t e : elems_) {
      if (e == 0) throw DomainError("set elements must be positive");
      if (e <= prev) throw DomainError("set elements must be strictly increasing");
      if (e > bound_) throw DomainError("set element exceeds the universe bound");
      prev = e;
    }
  }

  std::vector<std::uint64_t> elems_;
  std::uint64_t bound_ = 0;
};

// Finite generator list x_1..x_k for finite-sums constructions.
struct GeneratorSequence {
  std::vector<std::uint64_t> terms;

  explicit GeneratorSequence(std::vector<std::uint64_t> t) : terms(std::move(t)) {
    if (terms.empty()) throw DomainError("generator sequence must be nonempty");
    for (const std::uint64_t x : terms)
      if (x == 0) throw DomainError("generator terms must be positive");
  }
};

inline IntegerSet primes_up_to(std::uint64_t limit) {
  if (limit < 2) throw DomainError("primes_up_to: limit must be at least 2");
  if (limit > 100'000'000) throw SizeError("primes_up_to: sieve limit capped at 1e8");
  std::vector<std::uint8_t> composite(limit + 1, 0);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return IntegerSet(std::move(primes), limit);
}

namespace detail {

inline std::uint64_t checked_generator_total(const GeneratorSequence& gen) {
  unsigned __int128 total = 0;
  for (const std::uint64_t x : gen.terms) total += x;
  if (total > (static_cast<unsigned __int128>(1) << 62))
    throw SizeError("generator totals overflow the subset-sum range");
  return static_cast<std::uint64_t>(total);
}

}  // namespace detail

// All nonempty subset sums, deduplicated and sorted; universe bound is the
// full-sequence total.
inline IntegerSet finite_sums(const GeneratorSequence& gen) {
  if (gen.terms.size() > 24) throw SizeError("finite_sums: more than 24 generators");
  const std::uint64_t total = detail::checked_generator_total(gen);
  std::vector<std::uint64_t> sums;
  for (const std::uint64_t x : gen.terms) {
    std::vector<std::uint64_t> shifted;
    shifted.reserve(sums.size() + 1);
    shifted.push_back(x);
    for (const std::uint64_t s : sums) shifted.push_back(s + x);
    std::vector<std::uint64_t> merged;
    merged.reserve(sums.size() + shifted.size());
    std::merge(sums.begin(), sums.end(), shifted.begin(), shifted.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    sums = std::move(merged);
  }
  return IntegerSet(std::move(sums), total);
}

// Each n <= bound joins independently with probability `density` under a
// fixed mt19937_64 stream; identical arguments give identical sets.
inline IntegerSet random_density_set(const Rational& density, std::uint64_t bound,
                                     std::uint64_t seed) {
  if (density <= Rational(0) || density > Rational(1))
    throw DomainError("random_density_set: density must lie in (0, 1]");
  if (density.den() > BigInt(1) << 32)
    throw DomainError("random_density_set: density denominator capped at 2^32");
  if (bound == 0) throw DomainError("random_density_set: bound must be positive");
  const auto num = static_cast<std::uint64_t>(density.num());
  const auto den = static_cast<std::uint64_t>(density.den());
  std::mt19937_64 eng(seed);
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    const unsigned __int128 draw = static_cast<unsigned __int128>(eng()) * den;
    const unsigned __int128 cut = static_cast<unsigned __int128>(num) << 64;
    if (draw < cut) out.push_back(n);
  }
  return IntegerSet(std::move(out), bound);
}

// ---------------------------------------------------------------------------
// set files: one integer per line, ascending; '#' lines are comments

inline IntegerSet read_set(std::istream& in) {
  std::vector<std::uint64_t> elems;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    if (!detail::all_digits(s))
      throw ParseError("set file line " + std::to_string(lineno) + ": expected a positive integer");
    std::uint64_t v = 0;
    for (const char c : s) {
      if (v > (UINT64_MAX - 9) / 10)
        throw ParseError("set file line " + std::to_string(lineno) + ": value out of range");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (v == 0)
      throw ParseError("set file line " + std::to_string(lineno) + ": elements must be positive");
    if (!elems.empty() && v <= elems.back())
      throw ParseError("set file line " + std::to_string(lineno) +
                       ": elements must be strictly increasing");
    elems.push_back(v);
  }
  return IntegerSet::with_inferred_bound(std::move(elems));
}

inline void write_set(const IntegerSet& set, std::ostream& out) {
  for (const std::uint64_t e : set.elements()) out << e << '\n';
}

inline IntegerSet read_set_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open set file '" + path.string() + "'");
  return read_set(in);
}

inline void write_set_file(const IntegerSet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write set file '" + path.string() + "'");
  write_set(set, out);
  if (!out) throw IoError("write failed for set file '" + path.string() + "'");
}

}  // namespace beatty
